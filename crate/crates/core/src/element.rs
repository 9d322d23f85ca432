//! Elements of the topological full group in partition form.
//!
//! An element `f(x) = T^{ν(x)}(x)` is stored as its cocycle `ν`, one integer
//! per admissible pattern of a radius `r`. Every constructor returns the
//! canonical form (smallest radius at which `ν` is a function of the central
//! window), so structural equality is equality in the group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::patterns::{coarsen, table, MAX_RADIUS};
use crate::rational::Rational;
use crate::words::{prefix, Word};

/// Largest `|ν|` an element may carry.
pub const MAX_COCYCLE: i64 = 1 << 10;

/// Default iteration cap of [`GroupElement::order`].
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    radius: usize,
    nu: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

fn check_cocycle(nu: &[i64]) -> Result<()> {
    if nu.iter().any(|v| v.abs() > MAX_COCYCLE) {
        return Err(Error::limit("cocycle value", MAX_COCYCLE as usize));
    }
    Ok(())
}

/// Whether `U, T(U), …, T^span(U)` are pairwise disjoint, the condition for
/// `Ψ_{U,M,M+span}` to be defined.
pub fn translates_disjoint(u: &ClopenSet, span: i64) -> Result<bool> {
    for j in 1..=span {
        if !u.is_disjoint(&u.shift(j)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl GroupElement {
    fn canonical(radius: usize, nu: Vec<i64>) -> Result<Self> {
        check_cocycle(&nu)?;
        let (radius, nu) = coarsen(radius, nu)?;
        Ok(GroupElement { radius, nu })
    }

    pub fn identity() -> Self {
        Self::constant(0)
    }

    fn constant(k: i64) -> Self {
        let n = table(1).expect("radius 1").len();
        GroupElement {
            radius: 1,
            nu: vec![k; n],
        }
    }

    /// `T^k`.
    pub fn power_of_t(k: i64) -> Result<Self> {
        check_cocycle(&[k])?;
        Ok(Self::constant(k))
    }

    /// Builds an element from an explicit cocycle on the radius-`radius`
    /// patterns, rejecting incomplete maps and non-bijective cocycles.
    pub fn from_cocycle(radius: usize, cocycle: &BTreeMap<Word, i64>) -> Result<Self> {
        let t = table(radius)?;
        if cocycle.len() != t.len() {
            return Err(Error::InvalidArgument(format!(
                "cocycle lists {} patterns, radius {radius} has {}",
                cocycle.len(),
                t.len()
            )));
        }
        let mut nu = vec![0i64; t.len()];
        for (p, &v) in cocycle {
            let i = t
                .index_of(p)
                .ok_or_else(|| Error::NotAFactor(p.to_string()))?;
            nu[i] = v;
        }
        let f = Self::canonical(radius, nu)?;
        f.inverse()?;
        Ok(f)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn max_abs_cocycle(&self) -> i64 {
        self.nu.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// `(pattern, ν)` pairs in pattern order.
    pub fn cocycle(&self) -> Vec<(Word, i64)> {
        let t = table(self.radius).expect("table exists for a live element");
        t.patterns()
            .iter()
            .cloned()
            .zip(self.nu.iter().copied())
            .collect()
    }

    /// The cocycle value at a radius-`radius` pattern.
    pub fn nu_at(&self, window: &[crate::words::Letter]) -> Option<i64> {
        let t = table(self.radius).ok()?;
        t.index_of(window).map(|i| self.nu[i])
    }

    pub fn is_identity(&self) -> bool {
        self.nu.iter().all(|&v| v == 0)
    }

    /// Points moved by the element.
    pub fn support(&self) -> ClopenSet {
        ClopenSet::from_members(self.radius, self.nu.iter().map(|&v| v != 0).collect()).canonical()
    }

    /// `Ψ_{U,M,N}`: `T` on `T^M(U) ∪ … ∪ T^{N-1}(U)`, `T^{M-N}` on `T^N(U)`,
    /// identity elsewhere. Fails unless the translates are pairwise disjoint.
    pub fn psi(u: &ClopenSet, m: i64, n: i64) -> Result<Self> {
        if m >= n {
            return Err(Error::InvalidArgument(format!(
                "psi needs M < N, got {m}, {n}"
            )));
        }
        if u.is_empty() {
            return Ok(Self::identity());
        }
        if n - m > MAX_COCYCLE {
            return Err(Error::limit("cocycle value", MAX_COCYCLE as usize));
        }
        let u = u.canonical();
        if !translates_disjoint(&u, n - m)? {
            return Err(Error::NotDisjoint { m, n });
        }
        let big = u.radius() + m.unsigned_abs().max(n.unsigned_abs()) as usize;
        if big > MAX_RADIUS {
            return Err(Error::limit("pattern radius", MAX_RADIUS));
        }
        let t = table(big)?;
        let small = table(u.radius())?;
        let members = u.members();
        let nu = (0..t.len())
            .map(|y| {
                // y lies in T^i(U) iff T^{-i}(y) lies in U
                let hit = (m..=n).find(|&i| {
                    let j = t
                        .window_index(y, &small, -i)
                        .expect("window inside pattern");
                    members[j]
                });
                match hit {
                    Some(i) if i < n => 1,
                    Some(_) => m - n,
                    None => 0,
                }
            })
            .collect();
        Self::canonical(big, nu)
    }

    /// `δ_U = Ψ_{U,0,1}`
    pub fn delta(u: &ClopenSet) -> Result<Self> {
        Self::psi(u, 0, 1)
    }

    /// `τ_U = Ψ_{U,0,2}`
    pub fn tau(u: &ClopenSet) -> Result<Self> {
        Self::psi(u, 0, 2)
    }

    /// `self ∘ g`: apply `g` first.
    ///
    /// `ν(x) = ν_self(T^{ν_g(x)} x) + ν_g(x)`, evaluated on patterns wide
    /// enough to contain the displaced window.
    pub fn compose(&self, g: &GroupElement) -> Result<GroupElement> {
        let big = g.radius.max(self.radius + g.max_abs_cocycle() as usize);
        if big > MAX_RADIUS {
            return Err(Error::limit("pattern radius", MAX_RADIUS));
        }
        let t = table(big)?;
        let ft = table(self.radius)?;
        let proj = t.project_to(g.radius)?;
        let nu = (0..t.len())
            .map(|i| {
                let kg = g.nu[proj[i] as usize];
                let j = t.window_index(i, &ft, kg).expect("window inside pattern");
                self.nu[j] + kg
            })
            .collect();
        Self::canonical(big, nu)
    }

    /// `T^k ∘ self`, which only adds `k` to the cocycle.
    pub fn then_t(&self, k: i64) -> Result<GroupElement> {
        let nu: Vec<i64> = self.nu.iter().map(|v| v + k).collect();
        check_cocycle(&nu)?;
        Ok(GroupElement {
            radius: self.radius,
            nu,
        })
    }

    /// The inverse, read off by finding for each point `y` the unique `k`
    /// with `ν(T^{-k} y) = k`. Fails with `NotBijective` if `k` is not unique.
    pub fn inverse(&self) -> Result<GroupElement> {
        let reach = self.max_abs_cocycle();
        let big = self.radius + reach as usize;
        if big > MAX_RADIUS {
            return Err(Error::limit("pattern radius", MAX_RADIUS));
        }
        let t = table(big)?;
        let ft = table(self.radius)?;
        let mut nu = Vec::with_capacity(t.len());
        for y in 0..t.len() {
            let mut found = None;
            for k in -reach..=reach {
                let j = t.window_index(y, &ft, -k).expect("window inside pattern");
                if self.nu[j] == k {
                    if found.is_some() {
                        return Err(Error::NotBijective);
                    }
                    found = Some(k);
                }
            }
            nu.push(-found.ok_or(Error::NotBijective)?);
        }
        Self::canonical(big, nu)
    }

    pub fn pow(&self, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = GroupElement::identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `n <= cap` with `f^n = 1`, else `Infinite`.
    ///
    /// Elements of nonzero index have infinite order and are reported as such
    /// without iterating.
    pub fn order(&self, cap: u64) -> Result<Order> {
        if self.index() != 0 {
            return Ok(Order::Infinite);
        }
        let mut p = self.clone();
        for n in 1..=cap {
            if p.is_identity() {
                return Ok(Order::Finite(n));
            }
            p = p.compose(self)?;
        }
        Ok(Order::Infinite)
    }

    /// The index map: the measure-weighted average of the cocycle.
    ///
    /// # Panics
    ///
    /// If the weighted sum is not an integer, which can only be a bug.
    pub fn index(&self) -> i64 {
        let t = table(self.radius).expect("table exists for a live element");
        let total: Rational = t
            .measures()
            .iter()
            .zip(&self.nu)
            .map(|(&m, &v)| m * Rational::from_integer(v as i128))
            .sum();
        match total.to_integer() {
            Some(n) => n as i64,
            None => panic!("NonIntegerIndex: index evaluated to {total} for {self}"),
        }
    }

    /// Applies the element to a finite window of a point.
    pub fn apply_to_window(&self, p: &PointWindow) -> Result<PointWindow> {
        let need = self.radius + self.max_abs_cocycle() as usize;
        if p.half_width < need {
            return Err(Error::WindowTooSmall {
                have: p.half_width,
                need,
            });
        }
        let w = p.half_width as i64;
        let r = self.radius as i64;
        let lo = (w - r + 1) as usize;
        let hi = (w + r + 1) as usize;
        let k = self
            .nu_at(&p.letters[lo..hi])
            .ok_or_else(|| Error::NotAFactor(Word::from(&p.letters[lo..hi]).to_string()))?;
        let nw = w - k.abs();
        let center = w + k;
        Ok(PointWindow {
            half_width: nw as usize,
            letters: Word::from(&p.letters[(center - nw) as usize..(center + nw + 1) as usize]),
        })
    }
}

/// Canonical text form: `r=<radius>;{<pattern>:<nu>,...}` in pattern order.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .cocycle()
            .iter()
            .map(|(p, v)| format!("{p}:{v}"))
            .collect();
        write!(f, "r={};{{{}}}", self.radius, body.join(","))
    }
}

impl FromStr for GroupElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupElement> {
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
            .ok_or_else(|| bad("cocycle must be enclosed in braces"))?;
        let mut map = BTreeMap::new();
        for entry in body.split(',').filter(|e| !e.is_empty()) {
            let (p, v) = entry
                .split_once(':')
                .ok_or_else(|| bad("expected pattern:nu"))?;
            let v: i64 = v
                .parse()
                .map_err(|_| bad("cocycle value is not an integer"))?;
            map.insert(p.parse::<Word>()?, v);
        }
        GroupElement::from_cocycle(radius, &map)
    }
}

/// A finite stretch `ω_{-W} … ω_0 . ω_1 … ω_W` of a point. Position 0 is the
/// last letter before the cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointWindow {
    pub half_width: usize,
    pub letters: Word,
}

impl PointWindow {
    pub fn new(half_width: usize, letters: Word) -> Result<Self> {
        if letters.len() != 2 * half_width + 1 {
            return Err(Error::InvalidArgument(format!(
                "window of half-width {half_width} needs {} letters",
                2 * half_width + 1
            )));
        }
        if !crate::words::occurs_in_xi(&letters)? {
            return Err(Error::NotAFactor(letters.to_string()));
        }
        Ok(PointWindow {
            half_width,
            letters,
        })
    }

    /// The window of `ξ` whose position 0 is `ξ_center` (1-based).
    pub fn from_xi(center: usize, half_width: usize) -> Result<Self> {
        if center <= half_width {
            return Err(Error::InvalidArgument(format!(
                "position {center} is too close to the start of xi for half-width {half_width}"
            )));
        }
        let start = center - half_width;
        let end = center + half_width;
        let pre = prefix(end)?;
        Ok(PointWindow {
            half_width,
            letters: Word::from(&pre[start - 1..end]),
        })
    }

    /// `ω_i` for `-W <= i <= W`.
    pub fn at(&self, i: i64) -> Option<crate::words::Letter> {
        let j = i + self.half_width as i64;
        (j >= 0)
            .then(|| self.letters.get(j as usize).copied())
            .flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clopen::{cyl, Cylinder};
    use crate::words::{w_n, Letter};

    fn set(s: &str) -> ClopenSet {
        cyl(s).to_set().unwrap()
    }

    #[test]
    fn powers_of_t() {
        let t = GroupElement::power_of_t(1).unwrap();
        let ti = GroupElement::power_of_t(-1).unwrap();
        assert!(t.compose(&ti).unwrap().is_identity());
        assert_eq!(
            GroupElement::power_of_t(0).unwrap(),
            GroupElement::identity()
        );
        assert_eq!(GroupElement::power_of_t(5).unwrap().index(), 5);
        assert_eq!(GroupElement::power_of_t(-3).unwrap().index(), -3);
        assert_eq!(t.order(100).unwrap(), Order::Infinite);
    }

    #[test]
    fn psi_examples() {
        let db = GroupElement::delta(&set("[.b]")).unwrap();
        assert_eq!(GroupElement::psi(&set("[.b]"), 0, 1).unwrap(), db);
        assert_eq!(db.order(10).unwrap(), Order::Finite(2));
        assert!(db.compose(&db).unwrap().is_identity());
        assert!(matches!(
            GroupElement::psi(&set("[.ac]"), 0, 2),
            Err(Error::NotDisjoint { .. })
        ));
        assert!(matches!(
            GroupElement::tau(&set("[.acac]")),
            Err(Error::NotDisjoint { .. })
        ));
        assert!(GroupElement::psi(&ClopenSet::empty(), 0, 5)
            .unwrap()
            .is_identity());
        assert!(GroupElement::delta(&ClopenSet::empty())
            .unwrap()
            .is_identity());
        let tau = GroupElement::tau(&set("[.acab]")).unwrap();
        assert_eq!(tau.order(10).unwrap(), Order::Finite(3));
    }

    #[test]
    fn orders_and_inverses() {
        let w3c = Cylinder::new(Word::default(), w_n(3).unwrap().concat(&[Letter::C]))
            .to_set()
            .unwrap();
        assert_eq!(
            GroupElement::psi(&w3c, 0, 3).unwrap().order(10).unwrap(),
            Order::Finite(4)
        );
        let tau = GroupElement::tau(&w3c).unwrap();
        assert_eq!(tau.compose(&tau).unwrap(), tau.inverse().unwrap());
        let dd = GroupElement::delta(&set("[.d]")).unwrap();
        assert_eq!(dd.inverse().unwrap(), dd);
        let tab = GroupElement::tau(&set("[.acab]")).unwrap();
        assert!(tab.compose(&tab.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn index_examples() {
        let db = GroupElement::delta(&set("[.b]")).unwrap();
        assert_eq!(db.index(), 0);
        let f = db.compose(&GroupElement::power_of_t(5).unwrap()).unwrap();
        assert_eq!(f.index(), 5);
        assert_eq!(f.order(50).unwrap(), Order::Infinite);
    }

    #[test]
    fn windows() {
        let p = PointWindow::from_xi(10, 6).unwrap();
        let q = GroupElement::power_of_t(2)
            .unwrap()
            .apply_to_window(&p)
            .unwrap();
        assert_eq!(q, PointWindow::from_xi(12, 4).unwrap());
        assert_eq!(GroupElement::identity().apply_to_window(&p).unwrap(), p);
        // xi_12 = b, so the point sitting just before position 12 is in [.b]
        let p = PointWindow::from_xi(11, 6).unwrap();
        assert_eq!(p.at(1), Some(Letter::B));
        let db = GroupElement::delta(&set("[.b]")).unwrap();
        let q = db.apply_to_window(&p).unwrap();
        assert_eq!(q, PointWindow::from_xi(12, 5).unwrap());
        assert!(matches!(
            db.apply_to_window(&PointWindow::from_xi(11, 1).unwrap()),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn rejects_non_bijective_cocycles() {
        // T on [.b] and identity elsewhere sends [.b] into [b.], which the
        // identity part already covers
        let t = table(1).unwrap();
        let mut map = BTreeMap::new();
        for p in t.patterns() {
            map.insert(p.clone(), if p[1] == Letter::B { 1 } else { 0 });
        }
        assert!(matches!(
            GroupElement::from_cocycle(1, &map),
            Err(Error::NotBijective)
        ));
        let db = GroupElement::delta(&set("[.b]")).unwrap();
        let text = db.to_string();
        assert_eq!(text.parse::<GroupElement>().unwrap(), db);
        assert_eq!(
            GroupElement::identity().to_string(),
            "r=1;{ab:0,ac:0,ad:0,ba:0,ca:0,da:0}"
        );
    }
}
