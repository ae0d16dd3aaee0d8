//! Space descriptions: the JSON document format and its conversion to an
//! [`EquivariantComplex`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ess_core::coeffs::{CoeffRing, Field};
use ess_core::complex::{
    complex_from_matrices, parse_matrix, presentation_complex, Epimorphism, EquivariantComplex, Presentation,
};
use ess_core::groupring::GroupDescriptor;
use ess_core::Matrix;

use crate::CliError;

/// One space, as written in an input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_cells: Vec<ExtraCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<MatricesDoc>,
    /// Map to `Z` used when a command needs one and `--nu` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_nu: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    /// Images of the generators in the group; the abelianization if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<BTreeMap<String, Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraCell {
    pub degree: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatricesDoc {
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<String>>>,
}

/// A parsed space together with the names of its group generators.
#[derive(Clone, Debug)]
pub struct Space {
    pub name: String,
    pub complex: EquivariantComplex,
    /// Names accepted by `--nu` for the generators of the group.
    pub generator_names: Vec<Vec<String>>,
    pub default_nu: Option<String>,
}

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Parses a document; serde diagnostics carry line and column.
pub fn parse_document(text: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid space description: {e}")))
}

fn matrix(
    rows: &[Vec<String>],
    cols: usize,
    group: GroupDescriptor,
    field: &Field,
) -> Result<Matrix<ess_core::groupring::GroupRingElem>, CliError> {
    if rows.is_empty() {
        return Ok(Matrix::from_rows(vec![], cols));
    }
    parse_matrix(rows, group, field).map_err(CliError::from)
}

/// Builds and validates the complex described by `doc`.
pub fn build_space(doc: &Document) -> Result<Space, CliError> {
    let ring: CoeffRing = doc.field.parse().map_err(input_error)?;
    let group: GroupDescriptor = doc.group.parse().map_err(input_error)?;
    let name = doc.name.clone().unwrap_or_else(|| "input".into());
    let q = Field::rationals();
    let var_names: Vec<Vec<String>> = (0..group.nvars()).map(|i| vec![group.var_name(i)]).collect();
    match (&doc.presentation, &doc.matrices) {
        (Some(p), None) => {
            let gens: Vec<&str> = p.generators.iter().map(String::as_str).collect();
            let rels: Vec<&str> = p.relators.iter().map(String::as_str).collect();
            let pres = Presentation::parse(&gens, &rels)?;
            let nu = match &p.nu {
                None => {
                    let nu = Epimorphism::abelianization(&pres)?;
                    if nu.target() != group {
                        return Err(CliError::Input(format!(
                            "no nu given and the abelianization {} differs from the group {group}",
                            nu.target()
                        )));
                    }
                    nu
                }
                Some(map) => {
                    if let Some(extra) = map.keys().find(|k| !p.generators.contains(k)) {
                        return Err(CliError::Input(format!("nu names unknown generator `{extra}`")));
                    }
                    let images = p
                        .generators
                        .iter()
                        .map(|g| {
                            map.get(g)
                                .cloned()
                                .ok_or_else(|| CliError::Input(format!("nu has no image for generator `{g}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Epimorphism::new(&pres, group, images)?
                }
            };
            let mut c = presentation_complex(&pres, &nu, CoeffRing::Integers)?;
            if !doc.extra_cells.is_empty() {
                let mut cells = Vec::new();
                for (k, cell) in doc.extra_cells.iter().enumerate() {
                    if cell.degree != 3 + k {
                        return Err(CliError::Input(format!(
                            "extra cells must come in degrees 3, 4, ...; found degree {} at position {}",
                            cell.degree,
                            k + 1
                        )));
                    }
                    let cols = if k == 0 { c.dim(2) } else { doc.extra_cells[k - 1].matrix.len() };
                    cells.push(matrix(&cell.matrix, cols, group, &q)?);
                }
                c = c.with_extra_cells(cells)?;
            }
            let complex = c.change_coefficients(ring)?;
            // Generators of an abelianization-style group may be named by
            // the presentation generator sent to them.
            let mut names = var_names;
            for (g, img) in p.generators.iter().zip(nu.images()) {
                let unit: Vec<usize> = img.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect();
                if unit.len() == 1 && img[unit[0]] == 1 && matches!(group, GroupDescriptor::FreeAbelian(_)) {
                    names[unit[0]].push(g.clone());
                }
            }
            Ok(Space { name, complex, generator_names: names, default_nu: doc.default_nu.clone() })
        }
        (None, Some(m)) => {
            if !doc.extra_cells.is_empty() {
                return Err(CliError::Input("\"extra_cells\" is only allowed with \"presentation\"".into()));
            }
            if m.boundaries.len() + 1 != m.dims.len() {
                return Err(CliError::Input(format!(
                    "{} cell dimensions need {} boundary matrices, got {}",
                    m.dims.len(),
                    m.dims.len().saturating_sub(1),
                    m.boundaries.len()
                )));
            }
            let field = Field::new(ring.carrier())?;
            let mut bs = Vec::new();
            for (q, rows) in m.boundaries.iter().enumerate() {
                bs.push(matrix(rows, m.dims[q], group, &field)?);
            }
            let complex = complex_from_matrices(ring, group, m.dims.clone(), bs)?;
            Ok(Space { name, complex, generator_names: var_names, default_nu: doc.default_nu.clone() })
        }
        _ => Err(CliError::Input("exactly one of \"presentation\" and \"matrices\" is required".into())),
    }
}

/// Parses `--nu` text such as `a=2,b=1,c=1` against the generator names.
pub fn parse_nu(text: &str, names: &[Vec<String>]) -> Result<Vec<i64>, CliError> {
    let mut out: Vec<Option<i64>> = vec![None; names.len()];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--nu entry `{part}` is not of the form name=value")))?;
        let (k, v) = (k.trim(), v.trim());
        let i = names
            .iter()
            .position(|ns| ns.iter().any(|n| n == k))
            .ok_or_else(|| CliError::Input(format!("--nu names unknown generator `{k}`")))?;
        let x: i64 = v.parse().map_err(|_| CliError::Input(format!("--nu value `{v}` for `{k}` is not an integer")))?;
        if out[i].replace(x).is_some() {
            return Err(CliError::Input(format!("--nu assigns generator `{k}` twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| CliError::Input(format!("--nu has no image for `{}`", names[i][0]))))
        .collect()
}
