use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::clopen::cyl;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Longest generator word the compiler will build.
pub const MAX_WORD_LEN: usize = 1 << 24;

/// `t`, `t^-1`, `b`, `d`, `x` stand for `T`, `T⁻¹`, `δ_[.b]`, `δ_[.d]`,
/// `δ_[.acacac]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLetter {
    T,
    TInv,
    B,
    D,
    X,
}

impl GenLetter {
    pub fn inverse(self) -> GenLetter {
        match self {
            GenLetter::T => GenLetter::TInv,
            GenLetter::TInv => GenLetter::T,
            l => l,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            GenLetter::T => "t",
            GenLetter::TInv => "t^-1",
            GenLetter::B => "b",
            GenLetter::D => "d",
            GenLetter::X => "x",
        }
    }
}

/// The group element a generator letter stands for (memoized).
pub fn generator(l: GenLetter) -> &'static GroupElement {
    static G: OnceLock<[GroupElement; 5]> = OnceLock::new();
    let g = G.get_or_init(|| {
        let d = |s: &str| GroupElement::delta(&cyl(s).to_set().unwrap()).unwrap();
        [
            GroupElement::power_of_t(1).unwrap(),
            GroupElement::power_of_t(-1).unwrap(),
            d("[.b]"),
            d("[.d]"),
            d("[.acacac]"),
        ]
    });
    &g[l as usize]
}

/// A word over the generator letters; the product is read left to right as
/// composition, so the rightmost letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenWord(Vec<GenLetter>);

impl GenWord {
    pub fn new() -> Self {
        GenWord(Vec::new())
    }

    pub fn from_letters(v: Vec<GenLetter>) -> Self {
        GenWord(v)
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.0
    }

    /// `t^k` spelled out.
    pub fn t_pow(k: i64) -> Self {
        let l = if k >= 0 {
            GenLetter::T
        } else {
            GenLetter::TInv
        };
        GenWord(vec![l; k.unsigned_abs() as usize])
    }

    pub fn single(l: GenLetter) -> Self {
        GenWord(vec![l])
    }

    /// Concatenation of the given pieces, checked against [`MAX_WORD_LEN`].
    pub fn product<'a, I: IntoIterator<Item = &'a GenWord>>(parts: I) -> Result<Self> {
        let mut v = Vec::new();
        for p in parts {
            if v.len() + p.len() > MAX_WORD_LEN {
                return Err(Error::limit("generator word length", MAX_WORD_LEN));
            }
            v.extend_from_slice(&p.0);
        }
        Ok(GenWord(v))
    }

    /// `T^k w T^-k`
    pub fn conjugate_by_t(&self, k: i64) -> Result<Self> {
        Self::product([&Self::t_pow(k), self, &Self::t_pow(-k)])
    }

    /// The inverse word: reversed, with `t` and `t^-1` swapped.
    pub fn invert(&self) -> Self {
        GenWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let n = k.unsigned_abs() as usize;
        if base.len().saturating_mul(n) > MAX_WORD_LEN {
            return Err(Error::limit("generator word length", MAX_WORD_LEN));
        }
        Ok(GenWord(base.0.repeat(n)))
    }

    /// Parses the compact notation used in formulas, such as
    /// `T^-3 b d T^3 x T^2 x T^-2`: tokens `T`, `T^k`, `b`, `d`, `x`.
    pub fn from_compact(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split_whitespace() {
            let piece = match tok {
                "T" => Self::t_pow(1),
                "b" => Self::single(GenLetter::B),
                "d" => Self::single(GenLetter::D),
                "x" => Self::single(GenLetter::X),
                _ => {
                    let k = tok
                        .strip_prefix("T^")
                        .and_then(|k| k.parse::<i64>().ok())
                        .ok_or_else(|| Error::Parse {
                            pos: 0,
                            msg: format!("`{tok}` is not T, T^k, b, d or x"),
                        })?;
                    Self::t_pow(k)
                }
            };
            parts.push(piece);
        }
        Self::product(&parts)
    }

    /// The compact notation, with runs of `t^{±1}` merged into `T^k`.
    pub fn to_compact(&self) -> String {
        let toks: Vec<String> = self
            .runs()
            .into_iter()
            .filter(|r| *r != Ok(0))
            .map(|r| match r {
                Ok(1) => "T".to_string(),
                Ok(k) => format!("T^{k}"),
                Err(l) => l.as_str().to_string(),
            })
            .collect();
        toks.join(" ")
    }

    /// Runs of the word with consecutive `t^{±1}` merged: `Ok(k)` for a
    /// power of `T`, `Err(letter)` for a delta generator.
    fn runs(&self) -> Vec<std::result::Result<i64, GenLetter>> {
        let mut out = Vec::new();
        for &l in &self.0 {
            let step = match l {
                GenLetter::T => 1,
                GenLetter::TInv => -1,
                other => {
                    out.push(Err(other));
                    continue;
                }
            };
            match out.last_mut() {
                Some(Ok(k)) => *k += step,
                _ => out.push(Ok(step)),
            }
        }
        out
    }
}

impl Deref for GenWord {
    type Target = [GenLetter];
    fn deref(&self) -> &[GenLetter] {
        &self.0
    }
}

impl FromIterator<GenLetter> for GenWord {
    fn from_iter<I: IntoIterator<Item = GenLetter>>(iter: I) -> Self {
        GenWord(iter.into_iter().collect())
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(l.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for GenWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<GenWord> {
        let mut out = Vec::new();
        let mut pos = 0;
        for tok in s.split(' ') {
            let l = match tok {
                "t" => GenLetter::T,
                "t^-1" => GenLetter::TInv,
                "b" => GenLetter::B,
                "d" => GenLetter::D,
                "x" => GenLetter::X,
                "" if s.is_empty() => break,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("`{tok}` is not a generator letter"),
                    })
                }
            };
            out.push(l);
            pos += tok.len() + 1;
        }
        Ok(GenWord(out))
    }
}

/// Cancels adjacent `t t^-1`, `t^-1 t`, `bb`, `dd`, `xx` to a fixed point.
pub fn free_reduce(w: &GenWord) -> GenWord {
    let mut out: Vec<GenLetter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    GenWord(out)
}

/// `#t - #t^-1`
pub fn exponent_sum_t(w: &GenWord) -> i64 {
    w.iter()
        .map(|l| match l {
            GenLetter::T => 1,
            GenLetter::TInv => -1,
            _ => 0,
        })
        .sum()
}

/// The group element of a generator word.
///
/// Runs of `t^{±1}` are merged into one power, and the product is built from
/// the right so every step multiplies a small element on the left.
pub fn eval_word(w: &GenWord) -> Result<GroupElement> {
    let mut acc = GroupElement::identity();
    for run in w.runs().into_iter().rev() {
        acc = match run {
            Ok(k) => acc.then_t(k)?,
            Err(l) => generator(l).compose(&acc)?,
        };
    }
    Ok(acc)
}
