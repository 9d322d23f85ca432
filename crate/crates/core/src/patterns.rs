//! Admissible centered patterns of a given radius, and their exact frequencies.
//!
//! A pattern of radius `r` is a factor `p` of `ξ` of length `2r`, read as the
//! window `ω_{-r+1} … ω_0 . ω_1 … ω_r` of a point around its cut. Clopen sets
//! and group elements are stored as data aligned with the sorted pattern list
//! of one radius.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::words::{factors, xi_letter, Letter, Word};

/// Largest radius for which a pattern table is built.
pub const MAX_RADIUS: usize = 1 << 10;

pub struct PatternTable {
    radius: usize,
    patterns: Arc<Vec<Word>>,
    index: HashMap<Word, u32>,
    parent: OnceLock<Vec<u32>>,
    measures: OnceLock<Vec<Rational>>,
}

fn tables() -> &'static RwLock<HashMap<usize, Arc<PatternTable>>> {
    static T: OnceLock<RwLock<HashMap<usize, Arc<PatternTable>>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The (memoized) table of admissible patterns of radius `radius >= 1`.
pub fn table(radius: usize) -> Result<Arc<PatternTable>> {
    if radius == 0 {
        return Err(Error::InvalidArgument(
            "pattern radius must be positive".into(),
        ));
    }
    if radius > MAX_RADIUS {
        return Err(Error::limit("pattern radius", MAX_RADIUS));
    }
    if let Some(t) = tables().read().unwrap().get(&radius) {
        return Ok(Arc::clone(t));
    }
    let patterns = factors(2 * radius)?;
    let index = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let t = Arc::new(PatternTable {
        radius,
        patterns,
        index,
        parent: OnceLock::new(),
        measures: OnceLock::new(),
    });
    Ok(Arc::clone(
        tables().write().unwrap().entry(radius).or_insert(t),
    ))
}

impl PatternTable {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    pub fn pattern(&self, i: usize) -> &Word {
        &self.patterns[i]
    }

    pub fn index_of(&self, window: &[Letter]) -> Option<usize> {
        self.index.get(window).map(|&i| i as usize)
    }

    /// For each pattern, the index of its central window one radius smaller.
    pub fn parents(&self) -> Result<&[u32]> {
        assert!(self.radius >= 2, "radius 1 has no parent level");
        if let Some(p) = self.parent.get() {
            return Ok(p);
        }
        let below = table(self.radius - 1)?;
        let p: Vec<u32> = self
            .patterns
            .iter()
            .map(|w| {
                below
                    .index_of(&w[1..w.len() - 1])
                    .expect("central window of a factor is a factor") as u32
            })
            .collect();
        Ok(self.parent.get_or_init(|| p))
    }

    /// Index of the central radius-`r` window of every pattern.
    pub fn project_to(&self, r: usize) -> Result<Vec<u32>> {
        assert!(r >= 1 && r <= self.radius);
        let mut idx: Vec<u32> = (0..self.len() as u32).collect();
        let mut level = self.radius;
        while level > r {
            let t = table(level)?;
            let par = t.parents()?;
            for i in idx.iter_mut() {
                *i = par[*i as usize];
            }
            level -= 1;
        }
        Ok(idx)
    }

    /// Index, in `target`, of the window around cut position `shift` inside
    /// pattern `i`, i.e. the pattern of `T^shift(x)` for `x` in pattern `i`.
    pub fn window_index(&self, i: usize, target: &PatternTable, shift: i64) -> Option<usize> {
        let r = target.radius as i64;
        let start = self.radius as i64 - r + shift;
        let end = start + 2 * r;
        if start < 0 || end > 2 * self.radius as i64 {
            return None;
        }
        let p = &self.patterns[i];
        target.index_of(&p[start as usize..end as usize])
    }

    /// Invariant measure of each pattern cylinder.
    pub fn measures(&self) -> &[Rational] {
        self.measures.get_or_init(|| {
            let mut m = vec![Rational::zero(); self.len()];
            for (w, weight) in residue_windows(2 * self.radius) {
                let i = self
                    .index_of(&w)
                    .expect("residue window is an admissible factor");
                m[i] = m[i] + weight;
            }
            m
        })
    }
}

/// Smallest `K` with `2^K >= 4 len`.
fn modulus_exponent(len: usize) -> u32 {
    let mut k = 0;
    while (1usize << k) < 4 * len {
        k += 1;
    }
    k
}

/// Conditional probability that the slot at a position divisible by `2^k`
/// carries `target`: the sum of `2^{k-m-1}` over `m >= k` with `l_m = target`.
fn tail_weight(k: u32, target: Letter) -> Rational {
    if target == Letter::A {
        return Rational::zero();
    }
    let m0 = (k..k + 3)
        .find(|&m| m >= 1 && crate::words::l_n(m) == target)
        .expect("l_m cycles through b, c, d");
    // 2^{k-m0-1} * (1 + 1/8 + 1/64 + ...) = 2^{k-m0+2} / 7
    let shift = (m0 - k) as i64;
    Rational::new(4, 7) * Rational::pow2_inv(shift as u32)
}

/// Every length-`len` window of `ξ` grouped by start residue mod `2^K`, with
/// its exact frequency. Positions with 2-adic valuation below `K` are forced;
/// the at most one position divisible by `2^K` ranges over `b, c, d`.
fn residue_windows(len: usize) -> Vec<(Word, Rational)> {
    let k = modulus_exponent(len);
    let modulus = 1u64 << k;
    let mut out = Vec::new();
    for s in 1..=modulus {
        let mut w: Vec<Letter> = Vec::with_capacity(len);
        let mut slot = None;
        for off in 0..len as u64 {
            let p = s + off;
            if p.is_multiple_of(modulus) {
                slot = Some(off as usize);
                w.push(Letter::A);
            } else {
                w.push(xi_letter(p));
            }
        }
        let base = Rational::pow2_inv(k);
        match slot {
            None => out.push((Word::from_letters(w), base)),
            Some(off) => {
                for l in Letter::SEPARATORS {
                    w[off] = l;
                    out.push((Word::from(&w[..]), base * tail_weight(k, l)));
                }
            }
        }
    }
    out
}

/// Exact frequency of the word `v` in `ξ`; zero iff `v` is not a factor.
pub fn word_measure(v: &[Letter]) -> Rational {
    if v.is_empty() {
        return Rational::one();
    }
    let k = modulus_exponent(v.len());
    let modulus = 1u64 << k;
    let base = Rational::pow2_inv(k);
    let mut total = Rational::zero();
    'start: for s in 1..=modulus {
        let mut weight = base;
        for (off, &want) in v.iter().enumerate() {
            let p = s + off as u64;
            if p.is_multiple_of(modulus) {
                weight = weight * tail_weight(k, want);
            } else if xi_letter(p) != want {
                continue 'start;
            }
        }
        total = total + weight;
    }
    total
}

/// Coarsens data aligned with `table(radius)` to the smallest radius at which
/// it is still a function of the central window. Returns the new radius and
/// the aligned data there.
pub(crate) fn coarsen<T: Copy + Eq>(radius: usize, values: Vec<T>) -> Result<(usize, Vec<T>)> {
    let mut r = radius;
    let mut cur = values;
    while r > 1 {
        let t = table(r)?;
        let par = t.parents()?;
        let below = table(r - 1)?;
        let mut next: Vec<Option<T>> = vec![None; below.len()];
        let mut ok = true;
        for (i, &v) in cur.iter().enumerate() {
            let slot = &mut next[par[i] as usize];
            match slot {
                None => *slot = Some(v),
                Some(prev) if *prev == v => {}
                Some(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        cur = next
            .into_iter()
            .map(|v| v.expect("every pattern extends to a larger radius"))
            .collect();
        r -= 1;
    }
    Ok((r, cur))
}

/// Lifts data aligned with `table(from)` to the larger radius `to`.
pub(crate) fn refine<T: Copy>(from: usize, values: &[T], to: usize) -> Result<Vec<T>> {
    if to == from {
        return Ok(values.to_vec());
    }
    let t = table(to)?;
    let proj = t.project_to(from)?;
    Ok(proj.iter().map(|&i| values[i as usize]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::word;

    #[test]
    fn single_letter_measures() {
        assert_eq!(word_measure(&word("a")), Rational::new(1, 2));
        assert_eq!(word_measure(&word("b")), Rational::new(1, 7));
        assert_eq!(word_measure(&word("c")), Rational::new(2, 7));
        assert_eq!(word_measure(&word("d")), Rational::new(1, 14));
        assert_eq!(word_measure(&word("aa")), Rational::zero());
    }

    #[test]
    fn table_measures_sum_to_one() {
        for r in 1..=6 {
            let t = table(r).unwrap();
            let total: Rational = t.measures().iter().copied().sum();
            assert_eq!(total, Rational::one(), "radius {r}");
            for (i, p) in t.patterns().iter().enumerate() {
                assert_eq!(t.measures()[i], word_measure(p));
            }
        }
    }

    #[test]
    fn coarsen_constant_data() {
        let t = table(5).unwrap();
        let (r, v) = coarsen(5, vec![7i64; t.len()]).unwrap();
        assert_eq!(r, 1);
        assert_eq!(v.len(), table(1).unwrap().len());
        let back = refine(1, &v, 5).unwrap();
        assert_eq!(back, vec![7i64; t.len()]);
    }
}
