//! Free group words, group presentations, epimorphisms onto abelian groups,
//! and the Fox free differential calculus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::groupring::{GroupDescriptor, GroupRingElem};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A word in the free group on `arity` generators, stored as spelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    arity: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(arity: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.gen >= arity) {
            return Err(Error::IndexOutOfRange { index: l.gen, arity });
        }
        Ok(FreeWord { arity, letters })
    }

    pub fn empty(arity: usize) -> Self {
        FreeWord { arity, letters: Vec::new() }
    }

    pub fn generator(arity: usize, gen: usize) -> Result<Self> {
        Self::new(arity, vec![Letter { gen, inv: false }])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { arity: self.arity, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.arity, other.arity);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { arity: self.arity, letters }
    }

    /// Exponent sum of each generator (the image in `Z^arity`).
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0; self.arity];
        for l in &self.letters {
            v[l.gen] += if l.inv { -1 } else { 1 };
        }
        v
    }

    /// Parses the compact syntax against the generator names: a lowercase
    /// letter is the generator of that name and an uppercase letter its
    /// inverse; `x3` / `X3` denote generator 3 (1-based) and its inverse;
    /// `(w)^n` repeats `w` (`n < 0` repeats the inverse).
    pub fn parse(text: &str, generators: &[String]) -> Result<FreeWord> {
        let chars: Vec<char> = text.chars().collect();
        let arity = generators.len();
        let mut pos = 0;
        let letters = parse_seq(text, &chars, &mut pos, generators, 0)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("unbalanced `)` at position {pos} in word `{text}`")));
        }
        FreeWord::new(arity, letters)
    }

    /// Writes the word back in the compact syntax.
    pub fn display_with(&self, generators: &[String]) -> String {
        let letters_ok = generators.iter().all(|g| g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase()));
        let mut out = String::new();
        for l in &self.letters {
            if letters_ok {
                let c = generators[l.gen].chars().next().unwrap();
                out.push(if l.inv { c.to_ascii_uppercase() } else { c });
            } else {
                out.push_str(&format!("{}{}", if l.inv { 'X' } else { 'x' }, l.gen + 1));
            }
        }
        out
    }
}

fn parse_seq(text: &str, chars: &[char], pos: &mut usize, gens: &[String], depth: usize) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    while *pos < chars.len() {
        let c = chars[*pos];
        if c.is_whitespace() {
            *pos += 1;
            continue;
        }
        if c == ')' {
            if depth == 0 {
                return Err(Error::Parse(format!("unbalanced `)` at position {} in word `{text}`", *pos)));
            }
            return Ok(out);
        }
        if c == '(' {
            *pos += 1;
            let inner = parse_seq(text, chars, pos, gens, depth + 1)?;
            if chars.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("missing `)` in word `{text}`")));
            }
            *pos += 1;
            let n = parse_power(text, chars, pos)?;
            for _ in 0..n.unsigned_abs() {
                if n >= 0 {
                    out.extend_from_slice(&inner);
                } else {
                    out.extend(inner.iter().rev().map(|l| l.inverse()));
                }
            }
            continue;
        }
        if (c == 'x' || c == 'X') && chars.get(*pos + 1).is_some_and(|d| d.is_ascii_digit()) {
            let start = *pos;
            *pos += 1;
            let mut k = 0usize;
            while let Some(d) = chars.get(*pos).and_then(|d| d.to_digit(10)) {
                k = k * 10 + d as usize;
                *pos += 1;
            }
            if k == 0 || k > gens.len() {
                let tok: String = chars[start..*pos].iter().collect();
                return Err(Error::Parse(format!(
                    "generator token `{tok}` at position {start} in word `{text}` is out of range (arity {})",
                    gens.len()
                )));
            }
            out.push(Letter { gen: k - 1, inv: c == 'X' });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let name = c.to_ascii_lowercase().to_string();
            match gens.iter().position(|g| *g == name) {
                Some(gen) => out.push(Letter { gen, inv: c.is_ascii_uppercase() }),
                None => {
                    return Err(Error::Parse(format!(
                        "unknown generator token `{c}` at position {} in word `{text}`",
                        *pos
                    )))
                }
            }
            *pos += 1;
            continue;
        }
        return Err(Error::Parse(format!("unexpected character `{c}` at position {} in word `{text}`", *pos)));
    }
    if depth > 0 {
        return Err(Error::Parse(format!("missing `)` in word `{text}`")));
    }
    Ok(out)
}

fn parse_power(text: &str, chars: &[char], pos: &mut usize) -> Result<i64> {
    if chars.get(*pos) != Some(&'^') {
        return Err(Error::Parse(format!("expected `^` after `)` at position {} in word `{text}`", *pos)));
    }
    *pos += 1;
    let braced = chars.get(*pos) == Some(&'{');
    if braced {
        *pos += 1;
    }
    let start = *pos;
    if chars.get(*pos) == Some(&'-') {
        *pos += 1;
    }
    while chars.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    let n = s.parse().map_err(|_| Error::Parse(format!("bad exponent `{s}` at position {start} in word `{text}`")))?;
    if braced {
        if chars.get(*pos) != Some(&'}') {
            return Err(Error::Parse(format!("missing `}}` in word `{text}`")));
        }
        *pos += 1;
    }
    Ok(n)
}

/// The Fox derivative `dw/dx_i` as a list of signed prefix words, following
/// `d(uv) = du + u dv`, `dx_i/dx_i = 1`, `dx_i^-1/dx_i = -x_i^-1`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> Result<Vec<(i8, FreeWord)>> {
    if i >= w.arity {
        return Err(Error::IndexOutOfRange { index: i, arity: w.arity });
    }
    let mut out = Vec::new();
    for (k, l) in w.letters.iter().enumerate() {
        if l.gen != i {
            continue;
        }
        if l.inv {
            out.push((-1, FreeWord { arity: w.arity, letters: w.letters[..=k].to_vec() }));
        } else {
            out.push((1, FreeWord { arity: w.arity, letters: w.letters[..k].to_vec() }));
        }
    }
    Ok(out)
}

/// A finite presentation `<x_1..x_n | r_1..r_m>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        if let Some(r) = relators.iter().find(|r| r.arity != generators.len()) {
            return Err(Error::ShapeMismatch(format!(
                "relator over {} generators in a presentation with {}",
                r.arity,
                generators.len()
            )));
        }
        Ok(Presentation { generators, relators })
    }

    /// Builds a presentation from generator names and relator strings.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators.iter().map(|r| FreeWord::parse(r, &gens)).collect::<Result<Vec<_>>>()?;
        Self::new(gens, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.display_with(&self.generators)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// A homomorphism from the presented group onto an abelian group `G`,
/// given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epimorphism {
    target: GroupDescriptor,
    images: Vec<Vec<i64>>,
}

impl Epimorphism {
    /// Validates that relators die and that the images generate `G`.
    pub fn new(presentation: &Presentation, target: GroupDescriptor, images: Vec<Vec<i64>>) -> Result<Self> {
        if images.len() != presentation.generators.len() {
            return Err(Error::LengthMismatch { expected: presentation.generators.len(), got: images.len() });
        }
        let k = target.nvars();
        if let Some(v) = images.iter().find(|v| v.len() != k) {
            return Err(Error::LengthMismatch { expected: k, got: v.len() });
        }
        let images: Vec<Vec<i64>> = images.into_iter().map(|v| target.normalize(v)).collect();
        let nu = Epimorphism { target, images };
        for (j, r) in presentation.relators.iter().enumerate() {
            let img = nu.image(r);
            if img.iter().any(|&x| x != 0) {
                return Err(Error::Homomorphism(format!(
                    "relator {} (`{}`) maps to {:?}, not the identity",
                    j + 1,
                    r.display_with(&presentation.generators),
                    img
                )));
            }
        }
        check_surjective(target, &nu.images)?;
        Ok(nu)
    }

    /// The abelianization map onto `Z^n`.
    pub fn abelianization(presentation: &Presentation) -> Result<Self> {
        let n = presentation.generators.len();
        let images = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(presentation, GroupDescriptor::FreeAbelian(n), images)
    }

    pub fn target(&self) -> GroupDescriptor {
        self.target
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    /// Image of a word, as a canonical exponent vector of `G`.
    pub fn image(&self, w: &FreeWord) -> Vec<i64> {
        let mut v = vec![0i64; self.target.nvars()];
        for l in &w.letters {
            for (x, y) in v.iter_mut().zip(&self.images[l.gen]) {
                if l.inv {
                    *x -= y;
                } else {
                    *x += y;
                }
            }
        }
        self.target.normalize(v)
    }

    /// Image of a Fox derivative in `kG`.
    pub fn fox_image(&self, w: &FreeWord, i: usize, field: &Field) -> Result<GroupRingElem> {
        let terms = fox_derivative(w, i)?;
        Ok(GroupRingElem::from_terms(
            self.target,
            field,
            terms.iter().map(|(s, u)| (self.image(u), field.from_i64(*s as i64))),
        ))
    }

    /// Composition with a homomorphism `G -> G'` given on generators of `G`.
    pub fn compose(&self, target: GroupDescriptor, images: &[Vec<i64>]) -> Epimorphism {
        let new_images = self
            .images
            .iter()
            .map(|v| {
                let mut out = vec![0i64; target.nvars()];
                for (e, img) in v.iter().zip(images) {
                    for (o, x) in out.iter_mut().zip(img) {
                        *o += e * x;
                    }
                }
                target.normalize(out)
            })
            .collect();
        Epimorphism { target, images: new_images }
    }
}

/// Checks that the vectors `images` generate the group `target`.
pub fn check_surjective(target: GroupDescriptor, images: &[Vec<i64>]) -> Result<()> {
    use num_integer::Integer;
    match target {
        GroupDescriptor::Cyclic { m, .. } => {
            let g = images.iter().fold(m as i64, |g, v| g.gcd(&v[0]));
            if g != 1 {
                return Err(Error::Homomorphism(format!("images generate a subgroup of index {g} in Z/{m}")));
            }
        }
        GroupDescriptor::FreeAbelian(k) => {
            if k == 0 {
                return Ok(());
            }
            let index = crate::modz::lattice_index(images, k);
            if index != Some(num_bigint::BigInt::from(1)) {
                let what = match index {
                    None => "a subgroup of lower rank".to_string(),
                    Some(i) => format!("a subgroup of index {i}"),
                };
                return Err(Error::Homomorphism(format!("images generate {what} in Z^{k}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn word_syntax() {
        let g = names(&["a", "b"]);
        let w = FreeWord::parse("abAB", &g).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.display_with(&g), "abAB");
        assert_eq!(w.abelianization(), vec![0, 0]);
        let p = FreeWord::parse("(abAB)^3", &g).unwrap();
        assert_eq!(p.len(), 12);
        let n = FreeWord::parse("(ab)^-2", &g).unwrap();
        assert_eq!(n.display_with(&g), "BABA");
        let t = FreeWord::parse("x1X2", &g).unwrap();
        assert_eq!(t.display_with(&g), "aB");
        let err = FreeWord::parse("abQ", &g).unwrap_err();
        assert!(err.to_string().contains("`Q`"), "{err}");
        assert!(FreeWord::parse("x3", &g).is_err());
        assert!(FreeWord::parse("(ab", &g).is_err());
    }

    #[test]
    fn fox_defining_rules() {
        let g = names(&["a", "b"]);
        let a = FreeWord::parse("a", &g).unwrap();
        assert_eq!(fox_derivative(&a, 0).unwrap(), vec![(1, FreeWord::empty(2))]);
        assert!(fox_derivative(&a, 1).unwrap().is_empty());
        let ai = FreeWord::parse("A", &g).unwrap();
        assert_eq!(fox_derivative(&ai, 0).unwrap(), vec![(-1, ai.clone())]);
        assert_eq!(fox_derivative(&a, 2), Err(Error::IndexOutOfRange { index: 2, arity: 2 }));
    }

    #[test]
    fn commutator_derivative() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let r = &p.relators()[0];
        let d = fox_derivative(r, 0).unwrap();
        let spelled: Vec<(i8, String)> = d.iter().map(|(s, w)| (*s, w.display_with(p.generators()))).collect();
        assert_eq!(spelled, vec![(1, "".to_string()), (-1, "abA".to_string())]);
        let nu = Epimorphism::abelianization(&p).unwrap();
        let q = Field::rationals();
        let img = nu.fox_image(r, 0, &q).unwrap();
        assert_eq!(img.to_string(), "-t2 + 1");
    }

    #[test]
    fn epimorphism_checks() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let z = GroupDescriptor::FreeAbelian(1);
        assert!(Epimorphism::new(&p, z, vec![vec![1], vec![1]]).is_ok());
        assert!(matches!(Epimorphism::new(&p, z, vec![vec![2], vec![4]]), Err(Error::Homomorphism(_))));
        let knot = Presentation::parse(&["x", "y"], &["xyxYXY"]).unwrap();
        assert!(matches!(Epimorphism::new(&knot, z, vec![vec![1], vec![2]]), Err(Error::Homomorphism(_))));
        let c6 = GroupDescriptor::cyclic(6).unwrap();
        assert!(Epimorphism::new(&p, c6, vec![vec![2], vec![3]]).is_ok());
        assert!(Epimorphism::new(&p, c6, vec![vec![2], vec![4]]).is_err());
    }
}
