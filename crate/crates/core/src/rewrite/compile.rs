use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::expr::MoveExpr;
use super::genword::{free_reduce, GenWord};
use crate::clopen::Cylinder;
use crate::element::translates_disjoint;
use crate::error::{Error, Result};
use crate::words::{l_n, Letter};

/// Highest level `n` accepted by the basic compilers.
pub const MAX_COMPILE_LEVEL: u32 = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Delta,
    Tau,
}

type Memo = Mutex<HashMap<(Kind, u32, Letter), Arc<GenWord>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(
    kind: Kind,
    n: u32,
    l: Letter,
    build: impl FnOnce() -> Result<GenWord>,
) -> Result<Arc<GenWord>> {
    if let Some(w) = memo().lock().unwrap().get(&(kind, n, l)) {
        return Ok(Arc::clone(w));
    }
    // the lock is not held while building, since rules recurse
    let w = Arc::new(free_reduce(&build()?));
    Ok(Arc::clone(
        memo().lock().unwrap().entry((kind, n, l)).or_insert(w),
    ))
}

fn check_level(n: u32, l: Letter) -> Result<()> {
    if l == Letter::A {
        return Err(Error::InvalidArgument(
            "the letter after w_n must be b, c or d".into(),
        ));
    }
    if n > MAX_COMPILE_LEVEL {
        return Err(Error::limit("compile level", MAX_COMPILE_LEVEL as usize));
    }
    Ok(())
}

fn word(s: &str) -> GenWord {
    s.parse().expect("generator word literal")
}

fn t(k: i64) -> GenWord {
    GenWord::t_pow(k)
}

fn cat(parts: &[&GenWord]) -> Result<GenWord> {
    GenWord::product(parts.iter().copied())
}

/// A generator word for `δ_[.w_n l]`, `n >= 2`.
pub fn compile_delta_basic(n: u32, l: Letter) -> Result<Arc<GenWord>> {
    check_level(n, l)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "delta level {n} is below 2"
        )));
    }
    memoized(Kind::Delta, n, l, || delta_rule(n, l))
}

fn delta_rule(n: u32, l: Letter) -> Result<GenWord> {
    use Letter::*;
    match (n, l) {
        // [.b] = T^3 [.acab], [.acac] = [.acacac] ⊔ T^2 [.acacac],
        // [.acad] = T^-3 [.d]
        (2, B) => return Ok(word("t^-1 t^-1 t^-1 b t t t")),
        (2, C) => return cat(&[&word("x t t x"), &t(-2)]),
        (2, D) => return cat(&[&t(-3), &word("d"), &t(3)]),
        // [.acacac] = T^4 [.w_3 c], [.d] = T^7 [.w_3 d], and
        // [.w_2 b] = [.w_3 b] ⊔ [.w_3 c] ⊔ [.w_3 d]
        (3, C) => return cat(&[&t(-4), &word("x"), &t(4)]),
        (3, D) => return cat(&[&t(-7), &word("d"), &t(7)]),
        (3, B) => {
            return cat(&[
                &t(-3),
                &word("b"),
                &t(-4),
                &word("d"),
                &t(3),
                &word("x"),
                &t(4),
            ])
        }
        _ => {}
    }
    let half = 1i64 << (n - 1);
    if l == l_n(n) {
        // [.w_{n-1} l_n] = T^{2^{n-1}} [.w_n l_n]
        compile_delta_basic(n - 1, l)?.conjugate_by_t(-half)
    } else if l == l_n(n - 1) {
        // [.w_n l_{n-1}] = T^{2^n} U ⊔ T^{3·2^{n-1}} U with U = [.w_{n+1} l_{n-1}].
        // Swapping the two translates telescopes into 2^{n-1} overlapping
        // 3-cycles Ψ_{U,K,K+2} for K = 2^n .. 3·2^{n-1} - 1
        let tau = compile_tau_basic(n + 1, l)?;
        let step = cat(&[&tau, &t(1)])?;
        cat(&[&t(2 * half), &step.pow(half)?, &t(-3 * half)])
    } else {
        // δ_[.w_{n-1} l_{n-1}] is the product of the three δ_[.w_n l']
        let lower = compile_delta_basic(n - 1, l_n(n - 1))?;
        let a = compile_delta_basic(n, l_n(n))?;
        let b = compile_delta_basic(n, l_n(n - 1))?;
        cat(&[&lower, &a, &b])
    }
}

/// A generator word for `τ_[.w_n l]`, `n >= 3`.
pub fn compile_tau_basic(n: u32, l: Letter) -> Result<Arc<GenWord>> {
    if n < 3 {
        return Err(Error::UndefinedTau(n));
    }
    check_level(n, l)?;
    memoized(Kind::Tau, n, l, || tau_rule(n, l))
}

fn tau_rule(n: u32, l: Letter) -> Result<GenWord> {
    match n {
        3 => {
            // [.w_3 l] as translates of level-4 cylinders
            let tau4 = |x: Letter| compile_tau_basic(4, x);
            if l == l_n(4) {
                tau4(l)?.conjugate_by_t(8)
            } else if l == l_n(3) {
                cat(&[&*tau4(Letter::B)?, &*tau4(Letter::C)?, &*tau4(Letter::D)?])
            } else {
                let base = tau4(l)?;
                cat(&[&base.conjugate_by_t(8)?, &base.conjugate_by_t(12)?])
            }
        }
        4 => {
            let dl = compile_delta_basic(3, l)?;
            let d3 = compile_delta_basic(3, l_n(3))?;
            cat(&[&t(-7), &dl, &t(7), &d3, &t(-7), &dl, &t(7), &d3])
        }
        _ => {
            let m = n - 1;
            let p = 1i64 << m;
            let tl = compile_tau_basic(m, l)?;
            let tm = compile_tau_basic(m, l_n(m))?;
            cat(&[
                &t(1 - p),
                &tl,
                &t(p - 2),
                &tm.invert(),
                &t(2 - p),
                &tl.invert(),
                &t(p - 2),
                &tm,
                &t(1),
            ])
        }
    }
}

fn level_for(dim: usize, min: u32) -> u32 {
    let mut n = min;
    while (1usize << n) < dim {
        n += 1;
    }
    n
}

/// `T^N δ_[.w_n l] T^-N` (or τ) for each dimension-`2^n` piece of `c`.
fn compile_cylinder(c: &Cylinder, kind: Kind) -> Result<GenWord> {
    let (min, span) = match kind {
        Kind::Delta => (2, 1),
        Kind::Tau => (3, 2),
    };
    let set = c.to_set()?;
    if set.is_empty() {
        return Ok(GenWord::new());
    }
    if !translates_disjoint(&set, span)? {
        return Err(Error::NotDisjoint { m: 0, n: span });
    }
    let n = level_for(c.dimension(), min);
    if n > MAX_COMPILE_LEVEL {
        return Err(Error::limit("compile level", MAX_COMPILE_LEVEL as usize));
    }
    let mut parts = Vec::new();
    for piece in c.split_right(1 << n)? {
        let (l, shift) = piece.normal_form_2n()?;
        let basic = match kind {
            Kind::Delta => compile_delta_basic(n, l)?,
            Kind::Tau => compile_tau_basic(n, l)?,
        };
        parts.push(basic.conjugate_by_t(shift)?);
    }
    GenWord::product(&parts)
}

/// Compiles a product of basic moves into a freely reduced generator word.
pub fn compile_expr(e: &MoveExpr) -> Result<GenWord> {
    compile_inner(e).map(|w| free_reduce(&w))
}

fn compile_inner(e: &MoveExpr) -> Result<GenWord> {
    Ok(match e {
        MoveExpr::Tpow(k) => t(*k),
        MoveExpr::Delta(c) => compile_cylinder(c, Kind::Delta)?,
        MoveExpr::Tau(c) => compile_cylinder(c, Kind::Tau)?,
        MoveExpr::Psi(c, m, n) => {
            if m >= n {
                return Err(Error::InvalidArgument(format!(
                    "psi needs M < N, got {m}, {n}"
                )));
            }
            let set = c.to_set()?;
            if !translates_disjoint(&set, n - m)? {
                return Err(Error::NotDisjoint { m: *m, n: *n });
            }
            // Ψ_{U,M,N} = Ψ_{U,M,M+1} ⋯ Ψ_{U,N-1,N}, with Ψ_{U,K,K+1} = T^K δ_U T^-K
            let delta = free_reduce(&compile_cylinder(c, Kind::Delta)?);
            let mut parts = Vec::new();
            for k in *m..*n {
                parts.push(delta.conjugate_by_t(k)?);
            }
            free_reduce(&GenWord::product(&parts)?)
        }
        MoveExpr::Product(parts) => {
            let words = parts
                .iter()
                .map(compile_inner)
                .collect::<Result<Vec<_>>>()?;
            free_reduce(&GenWord::product(&words)?)
        }
        MoveExpr::Inverse(inner) => compile_inner(inner)?.invert(),
        MoveExpr::Power(inner, k) => free_reduce(&compile_inner(inner)?).pow(*k)?,
    })
}
