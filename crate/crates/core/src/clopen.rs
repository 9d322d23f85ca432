//! Cylinders `[u.w]` and the Boolean algebra of clopen subsets of the
//! subshift, with exact invariant measure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::patterns::{coarsen, refine, table, MAX_RADIUS};
use crate::rational::Rational;
use crate::words::{cyclic_class, factors, l_n, occurs_in_xi, w_n, Letter, Word};

/// Largest `|k|` accepted by [`ClopenSet::shift`].
pub const MAX_SHIFT: i64 = 1 << 12;

/// The cylinder `[u.w]`: points reading `u` just left of the cut and `w` just right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub left: Word,
    pub right: Word,
}

impl Cylinder {
    pub fn new(left: Word, right: Word) -> Self {
        Cylinder { left, right }
    }

    pub fn dimension(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// `uw`
    pub fn content(&self) -> Word {
        self.left.concat(&self.right)
    }

    pub fn is_empty(&self) -> Result<bool> {
        if self.dimension() == 0 {
            return Ok(false);
        }
        Ok(!occurs_in_xi(&self.content())?)
    }

    /// Smallest radius at which this cylinder is a union of patterns.
    pub fn min_radius(&self) -> usize {
        self.left.len().max(self.right.len()).max(1)
    }

    /// The cylinder as a union of radius-`r` patterns (not coarsened).
    pub fn to_clopen(&self, r: usize) -> Result<ClopenSet> {
        if r < self.min_radius() {
            return Err(Error::InvalidArgument(format!(
                "radius {r} is smaller than the sides of {self}"
            )));
        }
        if self.is_empty()? {
            return Err(Error::EmptyInput(format!("cylinder {self} is empty")));
        }
        let t = table(r)?;
        let lo = r - self.left.len();
        let content = self.content();
        let members = t
            .patterns()
            .iter()
            .map(|p| p[lo..lo + content.len()] == content[..])
            .collect();
        Ok(ClopenSet { radius: r, members })
    }

    /// The cylinder as a canonical clopen set; empty cylinders give `∅`.
    pub fn to_set(&self) -> Result<ClopenSet> {
        if self.is_empty()? {
            return Ok(ClopenSet::empty());
        }
        Ok(self.to_clopen(self.min_radius())?.canonical())
    }

    /// Disjoint nonempty cylinders `[u.wz]` of dimension `dim` covering `self`.
    pub fn split_right(&self, dim: usize) -> Result<Vec<Cylinder>> {
        if dim < self.dimension() {
            return Err(Error::InvalidArgument(format!(
                "cannot split {self} into cylinders of smaller dimension {dim}"
            )));
        }
        let content = self.content();
        Ok(factors(dim)?
            .iter()
            .filter(|f| f.starts_with(&content))
            .map(|f| Cylinder::new(self.left.clone(), Word::from(&f[self.left.len()..])))
            .collect())
    }

    /// Writes a nonempty cylinder of dimension `2^n` as `T^N([.w_n l])`.
    ///
    /// Rotations of `w_n l` are split as in the constructive case analysis:
    /// `w = u'₂ l_{n-1} w_{n-1} l u'₁` or `w = u'₂ l w_{n-1} l_{n-1} u'₁`.
    /// The answer is re-checked by clopen equality.
    pub fn normal_form_2n(&self) -> Result<(Letter, i64)> {
        let dim = self.dimension();
        if self.is_empty()? {
            return Err(Error::EmptyInput(format!("cylinder {self} is empty")));
        }
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{self} has dimension {dim}, not 2^n with n >= 1"
            )));
        }
        let n = dim.trailing_zeros();
        let w = self.content();
        let (l, r) = cyclic_class(&w)?;
        let half = 1i64 << (n - 1);
        let r = r as i64;
        let shift_of_w = if n == 1 {
            // w = al gives 0; w = la gives [.la] = [a.l] = T([.al])
            r
        } else if r == 0 {
            0
        } else if r < half {
            // |u2| > |u1|: w = u'2 l_{n-1} w_{n-1} l u1, N1 = |u'2 l_{n-1}| = half - r, N2 = half
            half - (half - r)
        } else if l == l_n(n - 1) {
            // same shape as above with u'2 one period longer
            half - (dim as i64 - r)
        } else {
            // w = u'2 l w_{n-1} l_{n-1} u'1, N1 = |u'2 l| = 2^n - r, N2 = 2^n
            dim as i64 - (dim as i64 - r)
        };
        let total = self.left.len() as i64 + shift_of_w;
        let target = Cylinder::new(Word::new(), w_n(n)?.concat(&[l]));
        let lhs = self.to_set()?;
        let rhs = target.to_set()?.shift(total)?;
        if lhs != rhs {
            return Err(Error::InternalVerificationFailed(format!(
                "{self} != T^{total} [.w_{n} {l}]"
            )));
        }
        Ok((l, total))
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}.{}]", self.left, self.right)
    }
}

impl FromStr for Cylinder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Cylinder> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("cylinder `{t}` must look like [u.w]"),
            })?;
        let (u, w) = inner.split_once('.').ok_or_else(|| Error::Parse {
            pos: 1,
            msg: "cylinder needs a `.` marking the cut".into(),
        })?;
        Ok(Cylinder::new(u.trim().parse()?, w.trim().parse()?))
    }
}

/// Shorthand: `cyl("[ac.ab]")`. Panics on malformed input.
pub fn cyl(s: &str) -> Cylinder {
    s.parse().expect("cylinder literal [u.w]")
}

/// A clopen set, stored as a union of the admissible patterns of one radius.
///
/// Equality is set equality, whatever the radii of the two sides.
#[derive(Debug, Clone)]
pub struct ClopenSet {
    radius: usize,
    members: Vec<bool>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        let n = table(1).expect("radius 1").len();
        ClopenSet {
            radius: 1,
            members: vec![false; n],
        }
    }

    pub fn full() -> Self {
        let n = table(1).expect("radius 1").len();
        ClopenSet {
            radius: 1,
            members: vec![true; n],
        }
    }

    /// Union of the given radius-`radius` patterns; each must be admissible.
    pub fn from_patterns<'a, I>(radius: usize, patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let t = table(radius)?;
        let mut members = vec![false; t.len()];
        for p in patterns {
            if p.len() != 2 * radius {
                return Err(Error::InvalidArgument(format!(
                    "pattern {p} does not have length {}",
                    2 * radius
                )));
            }
            let i = t
                .index_of(p)
                .ok_or_else(|| Error::NotAFactor(p.to_string()))?;
            members[i] = true;
        }
        Ok(ClopenSet { radius, members })
    }

    pub(crate) fn from_members(radius: usize, members: Vec<bool>) -> Self {
        ClopenSet { radius, members }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub(crate) fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn patterns(&self) -> Vec<Word> {
        let t = table(self.radius).expect("table exists for a live set");
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| t.pattern(i).clone())
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    /// The same set at a larger radius.
    pub fn at_radius(&self, r: usize) -> Result<ClopenSet> {
        if r < self.radius {
            return Err(Error::InvalidArgument(format!(
                "cannot coarsen radius {} to {r} by refinement",
                self.radius
            )));
        }
        Ok(ClopenSet {
            radius: r,
            members: refine(self.radius, &self.members, r)?,
        })
    }

    /// The unique minimal-radius representation.
    pub fn canonical(&self) -> ClopenSet {
        let (radius, members) =
            coarsen(self.radius, self.members.clone()).expect("coarsening only shrinks radius");
        ClopenSet { radius, members }
    }

    fn zip_with(&self, other: &ClopenSet, f: impl Fn(bool, bool) -> bool) -> Result<ClopenSet> {
        let r = self.radius.max(other.radius);
        let a = self.at_radius(r)?;
        let b = other.at_radius(r)?;
        let members = a
            .members
            .iter()
            .zip(&b.members)
            .map(|(&x, &y)| f(x, y))
            .collect();
        Ok(ClopenSet { radius: r, members }.canonical())
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.zip_with(other, |x, y| x || y)
    }

    pub fn intersect(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.zip_with(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.zip_with(other, |x, y| x && !y)
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet {
            radius: self.radius,
            members: self.members.iter().map(|&m| !m).collect(),
        }
        .canonical()
    }

    pub fn equals(&self, other: &ClopenSet) -> Result<bool> {
        let r = self.radius.max(other.radius);
        Ok(self.at_radius(r)?.members == other.at_radius(r)?.members)
    }

    pub fn subset(&self, other: &ClopenSet) -> Result<bool> {
        let r = self.radius.max(other.radius);
        let a = self.at_radius(r)?;
        let b = other.at_radius(r)?;
        Ok(a.members.iter().zip(&b.members).all(|(&x, &y)| !x || y))
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// The image `T^k(S)`.
    pub fn shift(&self, k: i64) -> Result<ClopenSet> {
        if k.abs() > MAX_SHIFT {
            return Err(Error::limit("shift amount", MAX_SHIFT as usize));
        }
        if k == 0 {
            return Ok(self.canonical());
        }
        let s = self.canonical();
        let big = s.radius + k.unsigned_abs() as usize;
        if big > MAX_RADIUS {
            return Err(Error::limit("pattern radius", MAX_RADIUS));
        }
        let t = table(big)?;
        let small = table(s.radius)?;
        // y is in T^k(S) iff the window of T^{-k}(y) is in S
        let members = (0..t.len())
            .map(|i| {
                let j = t
                    .window_index(i, &small, -k)
                    .expect("windows of factors are factors");
                s.members[j]
            })
            .collect();
        Ok(ClopenSet {
            radius: big,
            members,
        }
        .canonical())
    }

    pub fn measure(&self) -> Rational {
        let t = table(self.radius).expect("table exists for a live set");
        t.measures()
            .iter()
            .zip(&self.members)
            .filter(|(_, &m)| m)
            .map(|(&w, _)| w)
            .sum()
    }

    /// The set as a disjoint union of cylinders `[u.w]` with `|u| = |w| = radius`.
    pub fn cylinders(&self) -> Vec<Cylinder> {
        let r = self.radius;
        self.patterns()
            .into_iter()
            .map(|p| Cylinder::new(Word::from(&p[..r]), Word::from(&p[r..])))
            .collect()
    }
}

impl PartialEq for ClopenSet {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
            .expect("refinement to an existing radius")
    }
}

impl Eq for ClopenSet {}

/// Whether the sets are pairwise disjoint and cover the whole space.
pub fn is_partition(sets: &[ClopenSet]) -> Result<bool> {
    let r = sets.iter().map(|s| s.radius).max().unwrap_or(1);
    let n = table(r)?.len();
    let mut count = vec![0u32; n];
    for s in sets {
        for (c, m) in count.iter_mut().zip(s.at_radius(r)?.members) {
            *c += m as u32;
        }
    }
    Ok(count.iter().all(|&c| c == 1))
}

/// Canonical text form: `r=<radius>;{<pattern>,...}`, patterns sorted.
impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let pats: Vec<String> = c.patterns().iter().map(|p| p.to_string()).collect();
        write!(f, "r={};{{{}}}", c.radius, pats.join(","))
    }
}

impl FromStr for ClopenSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<ClopenSet> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: msg.to_string(),
        };
        let rest = s
            .trim()
            .strip_prefix("r=")
            .ok_or_else(|| bad("expected `r=`"))?;
        let (r, body) = rest.split_once(';').ok_or_else(|| bad("expected `;`"))?;
        let radius: usize = r.parse().map_err(|_| bad("radius is not an integer"))?;
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| bad("patterns must be enclosed in braces"))?;
        let pats: Vec<Word> = body
            .split(',')
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        ClopenSet::from_patterns(radius, &pats)
    }
}
