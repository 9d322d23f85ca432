//! Mechanical checks of the structural lemmas, one named suite per lemma.
//!
//! Every suite returns one [`Outcome`] per instance. Randomized suites draw
//! from a ChaCha8 stream seeded by [`Config::seed`], so output is
//! reproducible byte for byte.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clopen::{ClopenSet, Cylinder};
use crate::element::{translates_disjoint, GroupElement};
use crate::error::{Error, Result};
use crate::grigorchuk::{check_relator, embed_letter, embed_word, GrigLetter, Relator};
use crate::rewrite::{
    compile_delta_basic, compile_expr, compile_tau_basic, eval_expr, eval_word, exponent_sum_t,
    free_reduce, GenWord, MoveExpr,
};
use crate::words::{
    factors, l_n, sigma_apply, sigma_decode, w_n, xi_letter, xi_prefix, Letter, Word,
};

pub const LEMMA_IDS: [&str; 22] = [
    "seq1",
    "seq2",
    "seq3",
    "seq4",
    "seq-st1",
    "seq-st2",
    "seq-st3",
    "cyl1",
    "cyl2-pre",
    "cyl2",
    "cyl-st1",
    "cyl-st2",
    "cyl-st3",
    "psi-gen1",
    "psi-gen2",
    "psi-gen3",
    "psi-gen4",
    "psi-de-3",
    "psi-de-tau",
    "psi-tau-all",
    "psi-de-all",
    "main1",
];

/// Every suite id, in run order.
pub fn lemma_ids() -> Vec<&'static str> {
    let mut v = LEMMA_IDS.to_vec();
    v.push("full-sub1");
    v
}

/// Length of the prefix of `ξ` scanned by the word lemmas.
pub const SCAN_LEN: usize = 1 << 16;

/// Randomized instances per suite.
pub const RANDOM_INSTANCES: usize = 50;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Largest level `n` for parameterized lemmas.
    pub n_max: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { n_max: 5, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub lemma: &'static str,
    pub instance: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{} {}: {status}", self.lemma, self.instance)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

struct Suite {
    lemma: &'static str,
    out: Vec<Outcome>,
}

impl Suite {
    fn new(lemma: &'static str) -> Self {
        Suite {
            lemma,
            out: Vec::new(),
        }
    }

    /// Records one instance; an error counts as a failure.
    fn check(&mut self, instance: impl Into<String>, r: Result<bool>) {
        let (passed, detail) = match r {
            Ok(p) => (p, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.out.push(Outcome {
            lemma: self.lemma,
            instance: instance.into(),
            passed,
            detail,
        });
    }
}

/// Runs one suite by id.
pub fn run(id: &str, cfg: &Config) -> Result<Vec<Outcome>> {
    let lemma = lemma_ids()
        .into_iter()
        .find(|&l| l == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown lemma id `{id}`")))?;
    let mut s = Suite::new(lemma);
    let n = cfg.n_max.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(lemma));
    match lemma {
        "seq1" => seq1(&mut s, n),
        "seq2" => seq2(&mut s),
        "seq3" => seq3(&mut s),
        "seq4" => seq4(&mut s, n),
        "seq-st1" => seq_st1(&mut s, n),
        "seq-st2" => seq_st2(&mut s, n),
        "seq-st3" => seq_st3(&mut s, n),
        "cyl1" => cyl1(&mut s, n),
        "cyl2-pre" => cyl2_pre(&mut s, n),
        "cyl2" => cyl2(&mut s, n),
        "cyl-st1" => cyl_st1(&mut s, n),
        "cyl-st2" => cyl_st2(&mut s, n),
        "cyl-st3" => cyl_st3(&mut s, n),
        "psi-gen1" => psi_gen1(&mut s, &mut rng),
        "psi-gen2" => psi_gen2(&mut s, &mut rng),
        "psi-gen3" => psi_gen3(&mut s, &mut rng),
        "psi-gen4" => psi_gen4(&mut s, &mut rng),
        "psi-de-3" => psi_de_3(&mut s),
        "psi-de-tau" => psi_de_tau(&mut s, n),
        "psi-tau-all" => psi_tau_all(&mut s, n),
        "psi-de-all" => psi_de_all(&mut s, n),
        "main1" => main1(&mut s, &mut rng),
        "full-sub1" => full_sub1(&mut s),
        _ => unreachable!("ids come from lemma_ids"),
    }
    Ok(s.out)
}

/// Runs every suite in order.
pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    lemma_ids()
        .into_iter()
        .flat_map(|id| run(id, cfg).expect("known id"))
        .collect()
}

/// Per-suite seed offset, so suites draw independent streams.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

// ---------------------------------------------------------------- helpers

fn wl(n: u32, l: Letter) -> Result<Word> {
    Ok(w_n(n)?.concat(&[l]))
}

fn set(left: &[Letter], right: &[Letter]) -> Result<ClopenSet> {
    Cylinder::new(Word::from(left), Word::from(right)).to_set()
}

fn right(w: &[Letter]) -> Result<ClopenSet> {
    set(&[], w)
}

fn t(k: i64) -> GroupElement {
    GroupElement::power_of_t(k).expect("small power of T")
}

fn delta(u: &ClopenSet) -> Result<GroupElement> {
    GroupElement::delta(u)
}

fn tau(u: &ClopenSet) -> Result<GroupElement> {
    GroupElement::tau(u)
}

/// The product `f_1 f_2 ⋯ f_k`, rightmost applied first.
fn prod(parts: &[&GroupElement]) -> Result<GroupElement> {
    let mut acc = GroupElement::identity();
    for p in parts.iter().rev() {
        acc = p.compose(&acc)?;
    }
    Ok(acc)
}

/// `T^k f T^-k`
fn conj(k: i64, f: &GroupElement) -> Result<GroupElement> {
    prod(&[&t(k), f, &t(-k)])
}

fn compact(s: &str) -> Result<GroupElement> {
    eval_word(&GenWord::from_compact(s)?)
}

fn scan() -> Result<Word> {
    xi_prefix(SCAN_LEN)
}

/// Start offsets (0-based) of every occurrence of `v` in `text`.
fn occurrences<'a>(text: &'a [Letter], v: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
    text.windows(v.len())
        .enumerate()
        .filter(move |(_, w)| *w == v)
        .map(|(i, _)| i)
}

// ---------------------------------------------------------- word lemmas

fn seq1(s: &mut Suite, n_max: u32) {
    let mut iterated = Word::from(&[Letter::A][..]);
    for n in 1..=n_max.max(12) {
        let r = (|| {
            let w = w_n(n)?;
            let next = w_n(n + 1)?;
            Ok(w.len() == (1 << n) - 1 && w == iterated && next == w.concat(&[l_n(n)]).concat(&w))
        })();
        s.check(format!("n={n}"), r);
        iterated = sigma_apply(&iterated);
    }
}

fn seq2(s: &mut Suite) {
    // the fixed point built by iterating the substitution from `a`
    let mut x = Word::from(&[Letter::A][..]);
    while x.len() < SCAN_LEN {
        x = sigma_apply(&x);
    }
    let mut ok = true;
    for big_n in 1..=SCAN_LEN as u64 {
        let v = big_n.trailing_zeros();
        let want = if v == 0 { Letter::A } else { l_n(v) };
        ok &= xi_letter(big_n) == want && x[big_n as usize - 1] == want;
    }
    s.check(format!("N=1..{SCAN_LEN}"), Ok(ok));
}

fn seq3(s: &mut Suite) {
    let r = (|| {
        let x = scan()?;
        // σ is a morphism, so blockwise agreement gives every (N, M)
        Ok((0..SCAN_LEN / 4).all(|j| sigma_apply(&x[2 * j..2 * j + 2])[..] == x[4 * j..4 * j + 4]))
    })();
    s.check(format!("blocks j<{}", SCAN_LEN / 4), r);
    let r = (|| {
        let x = scan()?;
        let mut ok = true;
        for n in 0..SCAN_LEN / 64 {
            for m in 1..=8 {
                let img = &x[4 * n..4 * n + 4 * m];
                ok &= sigma_decode(img)?[..] == x[2 * n..2 * n + 2 * m];
            }
        }
        Ok(ok)
    })();
    s.check(format!("decode N<{} M<=8", SCAN_LEN / 64), r);
}

fn seq4(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let x = scan()?;
            let len = 1usize << n;
            let rotations: Vec<Word> = Letter::SEPARATORS
                .iter()
                .map(|&l| wl(n, l))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .flat_map(|w| (0..len).map(move |r| w.rotate(r)))
                .collect();
            Ok(x.windows(len)
                .all(|f| rotations.iter().any(|r| r[..] == *f)))
        })();
        s.check(format!("n={n}"), r);
    }
}

fn seq_st1(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let x = scan()?;
            let key = wl(n, l_n(n))?;
            let k = key.len();
            let options: Vec<Word> = Letter::SEPARATORS
                .iter()
                .map(|&l| wl(n, l))
                .collect::<Result<_>>()?;
            let mut ok = true;
            for i in occurrences(&x, &key) {
                if i + 2 * k <= x.len() {
                    ok &= options.iter().any(|o| x[i + k..i + 2 * k] == o[..]);
                }
                if i >= k {
                    ok &= options.iter().any(|o| x[i - k..i] == o[..]);
                }
            }
            Ok(ok)
        })();
        s.check(format!("n={n}"), r);
    }
}

fn seq_st2(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let x = scan()?;
            let key = wl(n, l_n(n + 1))?;
            let nb = wl(n, l_n(n))?;
            let k = key.len();
            let mut ok = true;
            for i in occurrences(&x, &key) {
                if i + 2 * k <= x.len() {
                    ok &= x[i + k..i + 2 * k] == nb[..];
                }
                // every occurrence is preceded by at least one block
                ok &= i >= k && x[i - k..i] == nb[..];
            }
            Ok(ok)
        })();
        s.check(format!("n={n}"), r);
    }
}

fn seq_st3(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let x = scan()?;
            let key = wl(n + 1, l_n(n))?;
            let k = key.len();
            let a = w_n(n)?
                .concat(&[l_n(n)])
                .concat(&w_n(n)?)
                .concat(&[l_n(n + 1)]);
            let b = w_n(n)?
                .concat(&[l_n(n + 1)])
                .concat(&w_n(n)?)
                .concat(&[l_n(n)]);
            let mut ok = true;
            for i in occurrences(&x, &key) {
                if i < k || i + 2 * k > x.len() {
                    continue;
                }
                let before = &x[i - k..i];
                let after = &x[i + k..i + 2 * k];
                ok &= before == after && (after == &a[..] || after == &b[..]);
            }
            Ok(ok)
        })();
        s.check(format!("n={n}"), r);
    }
}

// ------------------------------------------------------- cylinder lemmas

fn cyl1(s: &mut Suite, n_max: u32) {
    for n in 2..=n_max.max(8) {
        let r = (|| {
            let u = right(&w_n(n)?)?;
            for big_n in 1..(1i64 << (n - 1)) {
                if !u.is_disjoint(&u.shift(big_n)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        s.check(format!("n={n} N=1..{}", (1 << (n - 1)) - 1), r);
    }
}

fn cyl2_pre(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        for l in Letter::SEPARATORS {
            let r = (|| {
                let w = w_n(n)?;
                let ln = l_n(n);
                let wln = w.concat(&[ln]);
                let first = set(&[l], &wln)? == set(&w.concat(&[l]), &wln.concat(&w))?;
                let second = set(&[ln], &w.concat(&[l]))? == set(&wln, &w.concat(&[l]).concat(&w))?;
                let third = l == ln || set(&[l], &wln)? == set(&wln.concat(&w).concat(&[l]), &[])?;
                Ok(first && second && third)
            })();
            s.check(format!("n={n} l={l}"), r);
        }
    }
}

fn cyl2(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let len = 1usize << n;
            let mut count = 0;
            for f in factors(len)?.iter() {
                for cut in 0..=len {
                    let c = Cylinder::new(Word::from(&f[..cut]), Word::from(&f[cut..]));
                    // normal_form_2n re-checks its answer by clopen equality
                    let (l, big_n) = c.normal_form_2n()?;
                    if c.to_set()? != right(&wl(n, l)?)?.shift(big_n)? {
                        return Ok(false);
                    }
                    count += 1;
                }
            }
            Ok(count > 0)
        })();
        s.check(format!("n={n}"), r);
    }
}

fn cyl_st1(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let whole = right(&wl(n, l_n(n))?)?;
            let parts: Vec<ClopenSet> = Letter::SEPARATORS
                .iter()
                .map(|&l| right(&wl(n + 1, l)?))
                .collect::<Result<_>>()?;
            let mut union = ClopenSet::empty();
            for (i, p) in parts.iter().enumerate() {
                for q in &parts[i + 1..] {
                    if !p.is_disjoint(q)? {
                        return Ok(false);
                    }
                }
                union = union.union(p)?;
            }
            Ok(union == whole)
        })();
        s.check(format!("n={n}"), r);
    }
}

fn cyl_st2(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r =
            (|| Ok(right(&wl(n, l_n(n + 1))?)? == right(&wl(n + 1, l_n(n + 1))?)?.shift(1 << n)?))(
            );
        s.check(format!("n={n}"), r);
    }
}

fn cyl_st3(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max {
        let r = (|| {
            let u = right(&wl(n + 2, l_n(n))?)?;
            let a = u.shift(1 << (n + 1))?;
            let b = u.shift(3 << n)?;
            Ok(a.is_disjoint(&b)? && right(&wl(n + 1, l_n(n))?)? == a.union(&b)?)
        })();
        s.check(format!("n={n}"), r);
    }
}

// ---------------------------------------------------- general Ψ lemmas

/// A nonempty cylinder of dimension between `lo` and `hi` with a random cut.
pub fn random_cylinder<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Result<Cylinder> {
    let d = rng.gen_range(lo..=hi);
    let f = factors(d)?
        .choose(rng)
        .cloned()
        .expect("factors exist at every length");
    let cut = rng.gen_range(0..=d);
    Ok(Cylinder::new(Word::from(&f[..cut]), Word::from(&f[cut..])))
}

/// A union of one or two random cylinders of dimension at most 8.
fn random_clopen<R: Rng>(rng: &mut R) -> Result<ClopenSet> {
    let mut u = random_cylinder(rng, 3, 8)?.to_set()?;
    if rng.gen_bool(0.5) {
        u = u.union(&random_cylinder(rng, 3, 8)?.to_set()?)?;
    }
    Ok(u)
}

const MAX_ATTEMPTS: usize = 10_000;

/// Draws `(U, M, N)` with `Ψ_{U,M,N}` defined, `|M|, |N| <= 8`,
/// `min_span <= N - M <= max_span`.
fn random_psi<R: Rng>(rng: &mut R, min_span: i64, max_span: i64) -> Result<(ClopenSet, i64, i64)> {
    for _ in 0..MAX_ATTEMPTS {
        let u = random_clopen(rng)?;
        let span = rng.gen_range(min_span..=max_span);
        let m = rng.gen_range(-8..=8 - span);
        if translates_disjoint(&u, span)? {
            return Ok((u, m, m + span));
        }
    }
    Err(Error::InternalVerificationFailed(
        "no admissible random instance".into(),
    ))
}

fn psi_gen1<R: Rng>(s: &mut Suite, rng: &mut R) {
    for i in 0..RANDOM_INSTANCES {
        let r = (|| {
            let (u, m, n) = random_psi(rng, 1, 4)?;
            let j = rng.gen_range(-8..=8);
            let k = rng.gen_range(-8..=8);
            let lhs = GroupElement::psi(&u.shift(k)?, m + j, n + j)?;
            let rhs = conj(j + k, &GroupElement::psi(&u, m, n)?)?;
            Ok((lhs == rhs, format!("#{i:02} U={u} M={m} N={n} J={j} K={k}")))
        })();
        record(s, i, r);
    }
}

fn psi_gen2<R: Rng>(s: &mut Suite, rng: &mut R) {
    for i in 0..RANDOM_INSTANCES {
        let r = (|| {
            let (u, m, n) = random_psi(rng, 1, 4)?;
            // refine until U has at least two patterns, then deal them out
            let mut r = u.radius();
            while u.at_radius(r)?.patterns().len() < 2 {
                r += 1;
            }
            let mut pats = u.at_radius(r)?.patterns();
            pats.shuffle(rng);
            let k = rng.gen_range(2..=pats.len().min(4));
            let mut groups: Vec<Vec<Word>> = vec![Vec::new(); k];
            for (j, p) in pats.into_iter().enumerate() {
                let g = if j < k { j } else { rng.gen_range(0..k) };
                groups[g].push(p);
            }
            let parts = groups
                .iter()
                .map(|g| GroupElement::psi(&ClopenSet::from_patterns(r, g)?, m, n))
                .collect::<Result<Vec<_>>>()?;
            let mut commute = true;
            for (a, p) in parts.iter().enumerate() {
                for q in &parts[a + 1..] {
                    commute &= p.compose(q)? == q.compose(p)?;
                }
            }
            let mut order: Vec<&GroupElement> = parts.iter().collect();
            order.shuffle(rng);
            let ok = commute && prod(&order)? == GroupElement::psi(&u, m, n)?;
            Ok((ok, format!("#{i:02} U={u} M={m} N={n} parts={k}")))
        })();
        record(s, i, r);
    }
}

fn psi_gen3<R: Rng>(s: &mut Suite, rng: &mut R) {
    for i in 0..RANDOM_INSTANCES {
        let r = (|| {
            let (u, m, n) = random_psi(rng, 2, 5)?;
            let k = rng.gen_range(m + 1..n);
            let lhs = GroupElement::psi(&u, m, n)?;
            let rhs = GroupElement::psi(&u, m, k)?.compose(&GroupElement::psi(&u, k, n)?)?;
            Ok((lhs == rhs, format!("#{i:02} U={u} M={m} K={k} N={n}")))
        })();
        record(s, i, r);
    }
}

/// Draws `U, V, M < K < N` meeting the hypotheses of the commutator identity.
/// `U` and `V` are usually cut from one factor so that they overlap.
fn random_commutator_instance<R: Rng>(
    rng: &mut R,
) -> Result<(ClopenSet, ClopenSet, i64, i64, i64)> {
    for _ in 0..MAX_ATTEMPTS {
        let (u, v) = if rng.gen_bool(0.75) {
            let f = factors(8)?
                .choose(rng)
                .cloned()
                .expect("factors of length 8");
            let cut = rng.gen_range(0..=8);
            let (a, b) = (rng.gen_range(0..=cut), rng.gen_range(cut..=8));
            let (c, e) = (rng.gen_range(0..=cut), rng.gen_range(cut..=8));
            if b - a < 3 || e - c < 3 {
                continue;
            }
            (set(&f[a..cut], &f[cut..b])?, set(&f[c..cut], &f[cut..e])?)
        } else {
            (random_clopen(rng)?, random_clopen(rng)?)
        };
        let k = rng.gen_range(-6..=6);
        let m = k - rng.gen_range(1..=2);
        let n = k + rng.gen_range(1..=2);
        if !translates_disjoint(&u, k - m)? || !translates_disjoint(&v, n - k)? {
            continue;
        }
        let mut ok = true;
        for j in 1..=(n - m) {
            ok &= v.shift(j)?.is_disjoint(&u)?;
        }
        if ok {
            return Ok((u, v, m, k, n));
        }
    }
    Err(Error::InternalVerificationFailed(
        "no admissible random instance".into(),
    ))
}

fn psi_gen4<R: Rng>(s: &mut Suite, rng: &mut R) {
    for i in 0..RANDOM_INSTANCES {
        let r = (|| {
            let (u, v, m, k, n) = random_commutator_instance(rng)?;
            let pv = GroupElement::psi(&v, k, n)?;
            let pu = GroupElement::psi(&u, m, k)?;
            let lhs = prod(&[&pv, &pu.inverse()?, &pv.inverse()?, &pu])?;
            let rhs = GroupElement::psi(&u.intersect(&v)?, k - 1, k + 1)?;
            Ok((lhs == rhs, format!("#{i:02} U={u} V={v} M={m} K={k} N={n}")))
        })();
        record(s, i, r);
    }
}

fn record(s: &mut Suite, i: usize, r: Result<(bool, String)>) {
    match r {
        Ok((p, label)) => s.check(label, Ok(p)),
        Err(e) => s.check(format!("#{i:02}"), Err(e)),
    }
}

// ------------------------------------------- the substitution subshift

fn cyl_text(text: &str) -> Result<ClopenSet> {
    text.parse::<Cylinder>()?.to_set()
}

fn psi_de_3(s: &mut Suite) {
    let d = |c: &str| delta(&cyl_text(c)?);
    let formulas: [(&str, &str); 10] = [
        ("[.acab]", "T^-3 b T^3"),
        ("[.acabacac]", "T^-4 x T^4"),
        ("[.acabacad]", "T^-7 d T^7"),
        ("[.acabacab]", "T^-3 b T^-4 d T^3 x T^4"),
        ("[.acac]", "x T^2 x T^-2"),
        ("[.acad]", "T^-3 d T^3"),
        ("[.ac]", "T^-3 b d T^3 x T^2 x T^-2"),
        ("[.c]", "T^-2 b d T^3 x T^2 x T^-3"),
        ("[.a]", "T^-1 b d T^-2 b d T^3 x T^2 x T^-2"),
        ("[a.]", "b d T^-2 b d T^3 x T^2 x T^-3"),
    ];
    for (c, w) in formulas {
        s.check(format!("delta{c} = {w}"), (|| Ok(d(c)? == compact(w)?))());
    }
    // the generators of G lie in G_3
    let conj_checks: [(&str, i64, &str); 3] = [
        ("[.b]", 3, "[.acab]"),
        ("[.d]", 7, "[.acabacad]"),
        ("[.acacac]", 4, "[.acabacac]"),
    ];
    for (lhs, k, inner) in conj_checks {
        s.check(
            format!("delta{lhs} = T^{k} delta{inner} T^{}", -k),
            (|| Ok(d(lhs)? == conj(k, &d(inner)?)?))(),
        );
    }
    s.check(
        "delta[.acab] = delta[.acabacab] delta[.acabacac] delta[.acabacad]",
        (|| {
            Ok(d("[.acab]")?
                == prod(&[&d("[.acabacab]")?, &d("[.acabacac]")?, &d("[.acabacad]")?])?)
        })(),
    );
}

fn psi_de_tau(s: &mut Suite, n_max: u32) {
    for n in 1..=n_max.min(5) {
        let r = (|| {
            let lhs = delta(&right(&wl(n + 1, l_n(n))?)?)?;
            let tu = tau(&right(&wl(n + 2, l_n(n))?)?)?;
            let step = tu.compose(&t(1))?;
            let rhs = prod(&[&t(1 << (n + 1)), &step.pow(1 << n)?, &t(-(3i64 << n))])?;
            Ok(lhs == rhs)
        })();
        s.check(
            format!("n={n} T^{} (tau T)^{} T^-{}", 1 << (n + 1), 1 << n, 3 << n),
            r,
        );
    }
}

fn psi_tau_all(s: &mut Suite, n_max: u32) {
    for n in 4..=n_max.max(4) {
        for l in Letter::SEPARATORS {
            // upward: τ_[.w_{n+1} l] from level-n τ's
            let r = (|| {
                let p = 1i64 << n;
                let tl = tau(&right(&wl(n, l)?)?)?;
                let tm = tau(&right(&wl(n, l_n(n))?)?)?;
                let rhs = prod(&[
                    &t(1 - p),
                    &tl,
                    &t(p - 2),
                    &tm.inverse()?,
                    &t(2 - p),
                    &tl.inverse()?,
                    &t(p - 2),
                    &tm,
                    &t(1),
                ])?;
                Ok(tau(&right(&wl(n + 1, l)?)?)? == rhs)
            })();
            s.check(format!("up n={n} l={l}"), r);
            // downward: [.w_{n-1} l] as one, three or two translates of
            // level-n cylinders, for l = l_n, l_{n-1}, l_{n-2}
            let r = (|| {
                let lower = right(&wl(n - 1, l)?)?;
                let h = 1i64 << (n - 1);
                let pieces: Vec<(Letter, i64)> = if l == l_n(n) {
                    vec![(l, h)]
                } else if l == l_n(n - 1) {
                    Letter::SEPARATORS.iter().map(|&x| (x, 0)).collect()
                } else {
                    vec![(l, h), (l, 3 * h / 2)]
                };
                let mut parts = Vec::new();
                let mut union = ClopenSet::empty();
                for (x, k) in pieces {
                    let base = right(&wl(n, x)?)?;
                    union = union.union(&base.shift(k)?)?;
                    parts.push(conj(k, &tau(&base)?)?);
                }
                let refs: Vec<&GroupElement> = parts.iter().collect();
                Ok(union == lower && tau(&lower)? == prod(&refs)?)
            })();
            s.check(format!("down n={n} l={l}"), r);
        }
    }
    for n in 3..=n_max.max(3) {
        for l in Letter::SEPARATORS {
            let r = (|| {
                let w = compile_tau_basic(n, l)?;
                let target = tau(&right(&wl(n, l)?)?)?;
                let e = eval_word(&w)?;
                Ok(e == target && exponent_sum_t(&w) == e.index())
            })();
            s.check(format!("compiled tau n={n} l={l}"), r);
        }
    }
}

fn psi_de_all(s: &mut Suite, n_max: u32) {
    for l in Letter::SEPARATORS {
        let r = (|| {
            let dl = delta(&right(&wl(3, l)?)?)?;
            let d3 = delta(&right(&wl(3, l_n(3))?)?)?;
            let rhs = prod(&[&t(-7), &dl, &t(7), &d3, &t(-7), &dl, &t(7), &d3])?;
            Ok(tau(&right(&wl(4, l)?)?)? == rhs)
        })();
        s.check(format!("tau[.w_4 {l}] in G_3"), r);
    }
    for n in 2..=n_max.max(2) {
        let r = (|| {
            let d = |m: u32, l: Letter| delta(&right(&wl(m, l)?)?);
            let (a, b, c) = (l_n(n - 1), l_n(n), l_n(n + 1));
            let split = d(n, b)?
                == prod(&[
                    &d(n + 1, Letter::B)?,
                    &d(n + 1, Letter::C)?,
                    &d(n + 1, Letter::D)?,
                ])?;
            let shifted = d(n, c)? == conj(1 << n, &d(n + 1, c)?)?;
            let h = 1i64 << (n - 1);
            let inner = d(n + 1, a)?;
            let doubled = d(n, a)? == prod(&[&t(2 * h), &inner, &t(h), &inner, &t(-3 * h)])?;
            Ok(split && shifted && doubled)
        })();
        s.check(format!("three formulas n={n}"), r);
    }
    for n in 2..=n_max.max(2) {
        for l in Letter::SEPARATORS {
            let r = (|| {
                let w = compile_delta_basic(n, l)?;
                let e = eval_word(&w)?;
                Ok(e == delta(&right(&wl(n, l)?)?)? && exponent_sum_t(&w) == e.index())
            })();
            s.check(format!("compiled delta n={n} l={l}"), r);
        }
    }
}

/// A random product of basic moves over cylinders of dimension at most 8.
pub fn random_move_expr<R: Rng>(rng: &mut R, depth: u32) -> Result<MoveExpr> {
    let leaf = |rng: &mut R| -> Result<MoveExpr> {
        for _ in 0..MAX_ATTEMPTS {
            let kind = rng.gen_range(0..4);
            if kind == 0 {
                return Ok(MoveExpr::Tpow(rng.gen_range(-6..=6)));
            }
            let c = random_cylinder(rng, 2, 8)?;
            let u = c.to_set()?;
            let span = match kind {
                1 => 1,
                2 => 2,
                _ => rng.gen_range(1..=3),
            };
            if !translates_disjoint(&u, span)? {
                continue;
            }
            return Ok(match kind {
                1 => MoveExpr::Delta(c),
                2 => MoveExpr::Tau(c),
                _ => {
                    let m = rng.gen_range(-4..=4);
                    MoveExpr::Psi(c, m, m + span)
                }
            });
        }
        Err(Error::InternalVerificationFailed(
            "no admissible random move".into(),
        ))
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    Ok(match rng.gen_range(0..4) {
        0 => MoveExpr::Inverse(Box::new(random_move_expr(rng, depth - 1)?)),
        1 => MoveExpr::Power(
            Box::new(random_move_expr(rng, depth - 1)?),
            rng.gen_range(-2..=3),
        ),
        _ => {
            let k = rng.gen_range(2..=3);
            MoveExpr::Product(
                (0..k)
                    .map(|_| random_move_expr(rng, depth - 1))
                    .collect::<Result<_>>()?,
            )
        }
    })
}

fn main1<R: Rng>(s: &mut Suite, rng: &mut R) {
    let fixed = [
        "delta([.a])",
        "delta([.c])",
        "T^7",
        "tau([.acab])",
        "psi([a.cab],-1,1)",
    ];
    let mut exprs: Vec<MoveExpr> = Vec::new();
    for f in fixed {
        exprs.push(crate::rewrite::parse_expr(f).expect("fixed expression parses"));
    }
    for _ in 0..RANDOM_INSTANCES {
        match random_move_expr(rng, 2) {
            Ok(e) => exprs.push(e),
            Err(e) => s.check("random expression", Err(e)),
        }
    }
    for e in exprs {
        let r = (|| {
            let w = compile_expr(&e)?;
            let got = eval_word(&w)?;
            Ok(got == eval_expr(&e)? && free_reduce(&w) == w && exponent_sum_t(&w) == got.index())
        })();
        s.check(format!("{e}"), r);
    }
}

fn full_sub1(s: &mut Suite) {
    use GrigLetter::*;
    for g in GrigLetter::ALL {
        s.check(
            format!("{}^2 = 1", g.as_char()),
            (|| Ok(embed_letter(g).compose(embed_letter(g))?.is_identity()))(),
        );
    }
    s.check(
        "bcd = 1",
        (|| Ok(embed_word(&"bcd".parse()?)?.is_identity()))(),
    );
    s.check(
        "a = compiled delta[.a]",
        (|| {
            let w = compile_expr(&MoveExpr::Delta("[.a]".parse()?))?;
            Ok(eval_word(&w)? == *embed_letter(A))
        })(),
    );
    s.check(
        "ab != ba",
        (|| {
            Ok(embed_letter(A).compose(embed_letter(B))?
                != embed_letter(B).compose(embed_letter(A))?)
        })(),
    );
    for (x, y) in [(B, C), (B, D), (C, D)] {
        s.check(
            format!(
                "{}{} = {}{}",
                x.as_char(),
                y.as_char(),
                y.as_char(),
                x.as_char()
            ),
            (|| {
                Ok(embed_letter(x).compose(embed_letter(y))?
                    == embed_letter(y).compose(embed_letter(x))?)
            })(),
        );
    }
    for which in [Relator::Ad4, Relator::Adacac4] {
        for k in 0..=which.check_cap() {
            s.check(format!("sigma^{k}({which})"), check_relator(k, which));
        }
    }
}
