//! Finite words over `{a, b, c, d}`, the substitution `a → aca, b → d, c → b,
//! d → c`, and its fixed point `ξ = acabacad…`.
//!
//! Positions of `ξ` are 1-based throughout, matching the usual convention
//! `ξ = ξ₁ξ₂ξ₃…`.

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`w_n`]; `w_20` has about a million letters.
pub const MAX_LEVEL: u32 = 20;

/// Default hard cap on the scanned prefix of `ξ`.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 22;

static PREFIX_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PREFIX_CAP);

/// Current cap on the length of any prefix of `ξ` that will be materialized.
pub fn prefix_cap() -> usize {
    PREFIX_CAP.load(Ordering::Relaxed)
}

/// Changes the prefix cap. Prefixes already cached stay valid.
pub fn set_prefix_cap(cap: usize) {
    PREFIX_CAP.store(cap.max(256), Ordering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];
    /// The three letters that sit at even positions of `ξ`, in search order.
    pub const SEPARATORS: [Letter; 3] = [Letter::B, Letter::C, Letter::D];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }

    /// Image of a single letter under the substitution.
    pub fn sigma(self) -> &'static [Letter] {
        use Letter::*;
        match self {
            A => &[A, C, A],
            B => &[D],
            C => &[B],
            D => &[C],
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word. Ordering is lexicographic with `a < b < c < d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// `self` rotated left by `r`: for `self = u₁u₂` with `|u₁| = r`, returns `u₂u₁`.
    pub fn rotate(&self, r: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let r = r % v.len();
            v.rotate_left(r);
        }
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.char_indices()
            .map(|(i, c)| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    pos: i,
                    msg: format!("`{c}` is not one of a, b, c, d"),
                })
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Shorthand used all over the tests: `word("acab")`.
///
/// Panics on letters outside `{a, b, c, d}`.
pub fn word(s: &str) -> Word {
    s.parse().expect("word literal over {a,b,c,d}")
}

pub fn sigma_apply(w: &[Letter]) -> Word {
    w.iter().flat_map(|l| l.sigma().iter().copied()).collect()
}

/// Inverts [`sigma_apply`] by a greedy left-to-right block parse.
pub fn sigma_decode(v: &[Letter]) -> Result<Word> {
    let mut out = Vec::with_capacity(v.len() / 2 + 1);
    let mut i = 0;
    while i < v.len() {
        match v[i] {
            Letter::A => {
                if v.get(i + 1) == Some(&Letter::C) && v.get(i + 2) == Some(&Letter::A) {
                    out.push(Letter::A);
                    i += 3;
                } else {
                    return Err(Error::NotInImage(Word::from(v).to_string()));
                }
            }
            Letter::D => {
                out.push(Letter::B);
                i += 1;
            }
            Letter::B => {
                out.push(Letter::C);
                i += 1;
            }
            Letter::C => {
                out.push(Letter::D);
                i += 1;
            }
        }
    }
    Ok(Word(out))
}

/// The separator letter `l_n = σ^{n-1}(c)`: `c, b, d` repeating with period 3.
pub fn l_n(n: u32) -> Letter {
    assert!(n >= 1, "l_n is defined for n >= 1");
    match n % 3 {
        1 => Letter::C,
        2 => Letter::B,
        _ => Letter::D,
    }
}

/// `w_n = σ^{n-1}(a)`, built through `w_{n+1} = w_n l_n w_n`.
pub fn w_n(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidArgument("w_n needs n >= 1".into()));
    }
    if n > MAX_LEVEL {
        return Err(Error::limit("w_n level", MAX_LEVEL as usize));
    }
    let len = (1usize << n) - 1;
    let p = prefix(len)?;
    Ok(Word::from(&p[..len]))
}

/// The letter `ξ_N` from the 2-adic valuation of `N`. `N` is 1-based.
pub fn xi_letter(n: u64) -> Letter {
    assert!(n >= 1, "positions of xi are 1-based");
    let v = n.trailing_zeros();
    if v == 0 {
        Letter::A
    } else {
        l_n(v)
    }
}

fn prefix_cell() -> &'static RwLock<Arc<Vec<Letter>>> {
    static CELL: OnceLock<RwLock<Arc<Vec<Letter>>>> = OnceLock::new();
    CELL.get_or_init(|| RwLock::new(Arc::new(vec![Letter::A])))
}

/// Shared read-only prefix of `ξ` holding at least `len` letters.
///
/// The buffer always holds some `w_n` and grows by `w_n ↦ w_n l_n w_n`.
pub(crate) fn prefix(len: usize) -> Result<Arc<Vec<Letter>>> {
    let cap = prefix_cap();
    if len > cap {
        return Err(Error::limit("prefix of xi", cap));
    }
    {
        let cur = prefix_cell().read().unwrap();
        if cur.len() >= len {
            return Ok(Arc::clone(&cur));
        }
    }
    let mut guard = prefix_cell().write().unwrap();
    if guard.len() < len {
        let mut buf: Vec<Letter> = guard.as_ref().clone();
        while buf.len() < len {
            // buf = w_n with |w_n| = 2^n - 1
            let n = (buf.len() + 1).trailing_zeros();
            let old = buf.len();
            buf.reserve(old + 1);
            buf.push(l_n(n));
            buf.extend_from_within(..old);
        }
        *guard = Arc::new(buf);
    }
    Ok(Arc::clone(&guard))
}

/// The first `len` letters of `ξ`.
pub fn xi_prefix(len: usize) -> Result<Word> {
    let p = prefix(len)?;
    Ok(Word::from(&p[..len]))
}

fn scan_start(len: usize) -> usize {
    256usize.max(8 * len)
}

/// Whether `v` is a factor of `ξ` (equivalently, `[.v]` is nonempty).
///
/// Scans prefixes of `ξ`, doubling from `max(256, 8|v|)`; a miss is final once
/// two consecutive prefixes agree and the shorter one has length at least `32|v|`.
pub fn occurs_in_xi(v: &[Letter]) -> Result<bool> {
    if v.is_empty() {
        return Ok(true);
    }
    if let Some(set) = factor_memo().read().unwrap().get(&v.len()) {
        return Ok(set.binary_search_by(|w| w.letters().cmp(v)).is_ok());
    }
    let found_in = |p: usize| -> Result<bool> {
        let pre = prefix(p)?;
        Ok(pre[..p].windows(v.len()).any(|w| w == v))
    };
    let mut p = scan_start(v.len());
    let mut last = found_in(p)?;
    loop {
        if last {
            return Ok(true);
        }
        let next = found_in(2 * p)?;
        if next == last && p >= 32 * v.len() {
            return Ok(next);
        }
        last = next;
        p *= 2;
    }
}

fn factor_memo() -> &'static RwLock<HashMap<usize, Arc<Vec<Word>>>> {
    static MEMO: OnceLock<RwLock<HashMap<usize, Arc<Vec<Word>>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Every factor of length `len`, read off the 2-adic structure of `ξ`.
///
/// With `2^K >= 4 len`, the letters of a window starting at position `s` are
/// fixed by `s mod 2^K`, except at the (at most one) position divisible by
/// `2^K`, which carries `l_m` for the valuation `m >= K` and so can be any of
/// `b, c, d`. Ranging over all residues and slot letters gives exactly the
/// factor set.
fn residue_factors(len: usize) -> Vec<Word> {
    let mut k = 0;
    while (1usize << k) < 4 * len {
        k += 1;
    }
    let modulus = 1u64 << k;
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    for s in 1..=modulus {
        let mut w: Vec<Letter> = Vec::with_capacity(len);
        let mut slot = None;
        for off in 0..len as u64 {
            let p = s + off;
            if p % modulus == 0 {
                slot = Some(off as usize);
                w.push(Letter::A);
            } else {
                w.push(xi_letter(p));
            }
        }
        match slot {
            None => {
                seen.insert(w);
            }
            Some(off) => {
                for l in Letter::SEPARATORS {
                    w[off] = l;
                    seen.insert(w.clone());
                }
            }
        }
    }
    let mut v: Vec<Word> = seen.into_iter().map(Word).collect();
    v.sort();
    v
}

/// All factors of `ξ` of length `len`, sorted lexicographically (memoized).
pub fn factors(len: usize) -> Result<Arc<Vec<Word>>> {
    if let Some(set) = factor_memo().read().unwrap().get(&len) {
        return Ok(Arc::clone(set));
    }
    if len > prefix_cap() {
        return Err(Error::limit("factor length", prefix_cap()));
    }
    let set = Arc::new(if len == 0 {
        vec![Word::new()]
    } else {
        residue_factors(len)
    });
    Ok(Arc::clone(
        factor_memo().write().unwrap().entry(len).or_insert(set),
    ))
}

/// Writes a factor of length `2^n` as a rotation of `w_n l`.
///
/// Returns `(l, r)` with `v = rotate(w_n l, r)`, searching `l` in the order
/// `b, c, d` and `r` upward.
pub fn cyclic_class(v: &[Letter]) -> Result<(Letter, usize)> {
    let len = v.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotAFactor(format!(
            "{} (length {len} is not 2^n with n >= 1)",
            Word::from(v)
        )));
    }
    if !occurs_in_xi(v)? {
        return Err(Error::NotAFactor(Word::from(v).to_string()));
    }
    let n = len.trailing_zeros();
    let base = w_n(n)?;
    for l in Letter::SEPARATORS {
        let full = base.concat(&[l]);
        for r in 0..len {
            if full[r..] == v[..len - r] && full[..r] == v[len - r..] {
                return Ok((l, r));
            }
        }
    }
    // every factor of length 2^n is such a rotation
    Err(Error::InternalVerificationFailed(format!(
        "factor {} is not a rotation of w_{n} b|c|d",
        Word::from(v)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_apply(&word("a")), word("aca"));
        assert_eq!(sigma_apply(&word("")), word(""));
        assert_eq!(sigma_apply(&word("ad")), word("acac"));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(sigma_decode(&word("aca")).unwrap(), word("a"));
        assert_eq!(sigma_decode(&word("acac")).unwrap(), word("ad"));
        assert!(matches!(
            sigma_decode(&word("ab")),
            Err(Error::NotInImage(_))
        ));
        assert!(matches!(
            sigma_decode(&word("acabac")),
            Err(Error::NotInImage(_))
        ));
    }

    #[test]
    fn ab_has_no_preimage_by_exhaustion() {
        // sigma never shrinks words, so preimages of "ab" have length <= 2
        let mut candidates = vec![word("")];
        for len in 1..=2 {
            let mut next = Vec::new();
            for w in candidates.iter().filter(|w| w.len() == len - 1) {
                for l in Letter::ALL {
                    next.push(w.concat(&[l]));
                }
            }
            candidates.extend(next);
        }
        assert!(candidates.iter().all(|w| sigma_apply(w) != word("ab")));
    }

    #[test]
    fn levels() {
        assert_eq!(w_n(1).unwrap(), word("a"));
        assert_eq!(w_n(2).unwrap(), word("aca"));
        assert_eq!(w_n(4).unwrap(), word("acabacadacabaca"));
        assert_eq!(w_n(5).unwrap(), word("acabacadacabacacacabacadacabaca"));
        assert!(matches!(w_n(21), Err(Error::ResourceLimit { .. })));
        assert!(matches!(w_n(0), Err(Error::InvalidArgument(_))));
        assert_eq!([l_n(1), l_n(2), l_n(3)], [Letter::C, Letter::B, Letter::D]);
    }

    #[test]
    fn letters_of_xi() {
        assert_eq!(xi_letter(4), Letter::B);
        assert_eq!(xi_letter(8), Letter::D);
        assert_eq!(xi_letter(12), Letter::B);
        assert_eq!(xi_prefix(8).unwrap(), word("acabacad"));
        assert_eq!(xi_prefix(0).unwrap(), word(""));
        assert_eq!(xi_prefix(15).unwrap(), word("acabacadacabaca"));
    }

    #[test]
    fn occurrences() {
        assert!(!occurs_in_xi(&word("aa")).unwrap());
        assert!(occurs_in_xi(&word("acac")).unwrap());
        assert!(!occurs_in_xi(&word("bd")).unwrap());
        assert!(occurs_in_xi(&word("")).unwrap());
    }

    #[test]
    fn cyclic_classes() {
        assert_eq!(cyclic_class(&word("caba")).unwrap(), (Letter::B, 1));
        assert_eq!(cyclic_class(&word("acab")).unwrap(), (Letter::B, 0));
        assert!(matches!(
            cyclic_class(&word("aca")),
            Err(Error::NotAFactor(_))
        ));
        assert!(matches!(
            cyclic_class(&word("abab")),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn factor_sets_are_sorted_and_small() {
        let f2 = factors(2).unwrap();
        let f2: Vec<String> = f2.iter().map(|w| w.to_string()).collect();
        assert_eq!(f2, ["ab", "ac", "ad", "ba", "ca", "da"]);
        let f8 = factors(8).unwrap();
        assert!(f8.windows(2).all(|p| p[0] < p[1]));
        assert!(f8.iter().all(|w| occurs_in_xi(w).unwrap()));
    }

    #[test]
    fn prefix_cap_is_enforced() {
        assert!(matches!(
            xi_prefix(prefix_cap() + 1),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
