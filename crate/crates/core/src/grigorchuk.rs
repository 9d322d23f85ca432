//! The Grigorchuk group inside the full group: `a ↦ δ_[.a]`,
//! `b ↦ δ_[.b]δ_[.c]`, `c ↦ δ_[.c]δ_[.d]`, `d ↦ δ_[.d]δ_[.b]`, and the
//! relators `σ^k((ad)^4)`, `σ^k((adacac)^4)` of its recursive presentation.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::clopen::cyl;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Largest `k` for which [`lysenok_relator`] expands a relator.
pub const MAX_RELATOR_K: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GrigLetter {
    A,
    B,
    C,
    D,
}

impl GrigLetter {
    pub const ALL: [GrigLetter; 4] = [GrigLetter::A, GrigLetter::B, GrigLetter::C, GrigLetter::D];

    /// `a → aca`, `b → d`, `c → b`, `d → c`
    pub fn sigma(self) -> &'static [GrigLetter] {
        use GrigLetter::*;
        match self {
            A => &[A, C, A],
            B => &[D],
            C => &[B],
            D => &[C],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            GrigLetter::A => 'a',
            GrigLetter::B => 'b',
            GrigLetter::C => 'c',
            GrigLetter::D => 'd',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GrigWord(pub Vec<GrigLetter>);

impl GrigWord {
    pub fn sigma(&self) -> GrigWord {
        GrigWord(
            self.0
                .iter()
                .flat_map(|l| l.sigma().iter().copied())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GrigWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for GrigWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<GrigWord> {
        s.char_indices()
            .map(|(pos, c)| match c {
                'a' => Ok(GrigLetter::A),
                'b' => Ok(GrigLetter::B),
                'c' => Ok(GrigLetter::C),
                'd' => Ok(GrigLetter::D),
                _ => Err(Error::Parse {
                    pos,
                    msg: format!("`{c}` is not a generator"),
                }),
            })
            .collect::<Result<_>>()
            .map(GrigWord)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relator {
    Ad4,
    Adacac4,
}

impl Relator {
    fn seed(self) -> &'static str {
        match self {
            Relator::Ad4 => "ad",
            Relator::Adacac4 => "adacac",
        }
    }

    /// Largest `k` checked by [`check_relator`].
    pub fn check_cap(self) -> u32 {
        match self {
            Relator::Ad4 => 3,
            Relator::Adacac4 => 2,
        }
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relator::Ad4 => "AD4",
            Relator::Adacac4 => "ADACAC4",
        })
    }
}

impl FromStr for Relator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Relator> {
        match s.to_ascii_uppercase().as_str() {
            "AD4" => Ok(Relator::Ad4),
            "ADACAC4" => Ok(Relator::Adacac4),
            _ => Err(Error::InvalidArgument(format!(
                "unknown relator `{s}`, expected AD4 or ADACAC4"
            ))),
        }
    }
}

/// `σ^k(seed^4)`
pub fn lysenok_relator(k: u32, which: Relator) -> Result<GrigWord> {
    if k > MAX_RELATOR_K {
        return Err(Error::limit("relator exponent", MAX_RELATOR_K as usize));
    }
    let mut w: GrigWord = which.seed().repeat(4).parse()?;
    for _ in 0..k {
        w = w.sigma();
    }
    Ok(w)
}

/// The image of a generator in the full group.
pub fn embed_letter(g: GrigLetter) -> &'static GroupElement {
    static E: OnceLock<[GroupElement; 4]> = OnceLock::new();
    let e = E.get_or_init(|| {
        let d = |s: &str| GroupElement::delta(&cyl(s).to_set().unwrap()).unwrap();
        let (da, db, dc, dd) = (d("[.a]"), d("[.b]"), d("[.c]"), d("[.d]"));
        [
            da,
            db.compose(&dc).unwrap(),
            dc.compose(&dd).unwrap(),
            dd.compose(&db).unwrap(),
        ]
    });
    &e[g as usize]
}

/// The product of the embedded letters, leftmost letter applied last.
pub fn embed_word(w: &GrigWord) -> Result<GroupElement> {
    let mut acc = GroupElement::identity();
    for &l in w.0.iter().rev() {
        acc = embed_letter(l).compose(&acc)?;
    }
    Ok(acc)
}

/// Whether `σ^k(seed^4)` maps to the identity.
pub fn check_relator(k: u32, which: Relator) -> Result<bool> {
    if k > which.check_cap() {
        return Err(Error::limit(
            "checked relator exponent",
            which.check_cap() as usize,
        ));
    }
    Ok(embed_word(&lysenok_relator(k, which)?)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Order;

    #[test]
    fn relator_words() {
        assert_eq!(
            lysenok_relator(0, Relator::Ad4).unwrap().to_string(),
            "adadadad"
        );
        assert_eq!(
            lysenok_relator(1, Relator::Ad4).unwrap().to_string(),
            "acac".repeat(4)
        );
        assert_eq!(lysenok_relator(2, Relator::Ad4).unwrap().len(), 32);
        assert!(lysenok_relator(5, Relator::Ad4).is_err());
        assert!(matches!(
            check_relator(4, Relator::Ad4),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn generators() {
        assert_eq!(
            embed_letter(GrigLetter::A).order(10).unwrap(),
            Order::Finite(2)
        );
        assert!(!embed_letter(GrigLetter::B).is_identity());
        let bcd: GrigWord = "bcd".parse().unwrap();
        assert!(embed_word(&bcd).unwrap().is_identity());
        assert!(check_relator(0, Relator::Ad4).unwrap());
        assert!(check_relator(1, Relator::Ad4).unwrap());
        assert!(check_relator(0, Relator::Adacac4).unwrap());
    }
}
