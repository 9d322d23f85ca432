//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lysenok::clopen::{ClopenSet, Cylinder};
use lysenok::element::GroupElement;
use lysenok::grigorchuk::{check_relator, embed_word, GrigWord, Relator};
use lysenok::rational::Rational;
use lysenok::rewrite::{
    compile_delta_basic, compile_expr, compile_tau_basic, eval_expr, eval_word, exponent_sum_t,
    GenWord,
};
use lysenok::verify::{self, random_cylinder, random_move_expr, Config};
use lysenok::words::{factors, w_n, word, xi_letter, xi_prefix, Letter, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suites(ids: &[&str], n_max: u32) -> Result<usize, String> {
    let cfg = Config { n_max, seed: 0 };
    let mut count = 0;
    for id in ids {
        for o in verify::run(id, &cfg).map_err(|e| e.to_string())? {
            ensure(o.passed, o.to_string())?;
            count += 1;
        }
    }
    Ok(count)
}

/// `a ↦ aca, b ↦ d, c ↦ b, d ↦ c` iterated on `a`, written out independently.
fn fixed_point() -> Check {
    let mut x = b"a".to_vec();
    while x.len() < 1 << 16 {
        x = x
            .iter()
            .flat_map(|&c| {
                match c {
                    b'a' => &b"aca"[..],
                    b'b' => b"d",
                    b'c' => b"b",
                    _ => b"c",
                }
                .iter()
                .copied()
            })
            .collect();
    }
    for n in 1..=1u64 << 16 {
        let got = xi_letter(n).as_char() as u8;
        ensure(got == x[n as usize - 1], format!("position {n}"))?;
    }
    Ok(format!("{} positions", 1 << 16))
}

fn word_lemmas() -> Check {
    let n = suites(
        &[
            "seq1", "seq2", "seq3", "seq4", "seq-st1", "seq-st2", "seq-st3", "cyl1", "cyl2-pre",
            "cyl-st1", "cyl-st2", "cyl-st3",
        ],
        5,
    )?;
    Ok(format!("{n} instances"))
}

fn normal_forms() -> Check {
    let mut count = 0;
    for n in 1..=5u32 {
        let len = 1usize << n;
        for f in factors(len).map_err(|e| e.to_string())?.iter() {
            for cut in 0..=len {
                let c = Cylinder::new(Word::from(&f[..cut]), Word::from(&f[cut..]));
                let (l, k) = c.normal_form_2n().map_err(|e| format!("{c}: {e}"))?;
                let target = Cylinder::new(Word::new(), w_n(n).unwrap().concat(&[l]));
                let image = target.to_set().unwrap().shift(k).unwrap();
                ensure(c.to_set().unwrap() == image, format!("{c}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cylinders"))
}

fn random_clopen(rng: &mut ChaCha8Rng) -> ClopenSet {
    let mut s = ClopenSet::empty();
    for _ in 0..rng.gen_range(1..4) {
        let c = random_cylinder(rng, 1, 6).unwrap();
        s = s.union(&c.to_set().unwrap()).unwrap();
    }
    s
}

fn measures() -> Check {
    let expect = [
        (Letter::A, 1, 2),
        (Letter::B, 1, 7),
        (Letter::C, 2, 7),
        (Letter::D, 1, 14),
    ];
    let len = 1usize << 20;
    let x = xi_prefix(len).map_err(|e| e.to_string())?;
    for (l, p, q) in expect {
        let c = Cylinder::new(Word::new(), Word::from(&[l][..]));
        let m = c.to_set().unwrap().measure();
        ensure(m == Rational::new(p, q), format!("μ([.{l}]) = {m}"))?;
        let freq = x.iter().filter(|&&y| y == l).count() as f64 / len as f64;
        ensure(
            (freq - p as f64 / q as f64).abs() < 1.0 / 256.0,
            format!("frequency of {l}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..50 {
        let (a, b) = (random_clopen(&mut rng), random_clopen(&mut rng));
        let union = a.union(&b).unwrap().measure() + a.intersect(&b).unwrap().measure();
        ensure(
            union == a.measure() + b.measure(),
            format!("additivity, set {i}"),
        )?;
        let k = rng.gen_range(-20..=20);
        ensure(
            a.shift(k).unwrap().measure() == a.measure(),
            format!("invariance, set {i}"),
        )?;
    }
    Ok("exact values, frequencies, 50 random sets".into())
}

fn psi_identities() -> Check {
    let cfg = Config { n_max: 5, seed: 0 };
    for id in ["psi-gen1", "psi-gen2", "psi-gen3", "psi-gen4"] {
        let out = verify::run(id, &cfg).map_err(|e| e.to_string())?;
        ensure(out.len() >= 50, format!("{id} ran {} instances", out.len()))?;
        for o in out {
            ensure(o.passed, o.to_string())?;
        }
    }
    Ok("4 x 50 instances".into())
}

fn explicit_formulas() -> Check {
    let delta = |u: &str, w: &str| {
        GroupElement::delta(&Cylinder::new(word(u), word(w)).to_set().unwrap()).unwrap()
    };
    let compact = |s: &str| eval_word(&GenWord::from_compact(s).unwrap()).unwrap();
    let cases = [
        ("", "a", "T^-1 b d T^-2 b d T^3 x T^2 x T^-2"),
        ("", "c", "T^-2 b d T^3 x T^2 x T^-3"),
        ("", "acac", "x T^2 x T^-2"),
        ("", "acad", "T^-3 d T^3"),
        ("", "ac", "T^-3 b d T^3 x T^2 x T^-2"),
        ("", "acab", "T^-3 b T^3"),
        ("", "acabacab", "T^-3 b T^-4 d T^3 x T^4"),
        ("", "acabacac", "T^-4 x T^4"),
        ("", "acabacad", "T^-7 d T^7"),
    ];
    for (u, w, f) in cases {
        ensure(delta(u, w) == compact(f), format!("δ_[{u}.{w}]"))?;
    }
    Ok(format!("{} identities", cases.len()))
}

fn compiler() -> Check {
    let basic = |n: u32, l: Letter| {
        Cylinder::new(Word::new(), w_n(n).unwrap().concat(&[l]))
            .to_set()
            .unwrap()
    };
    let mut words = 0;
    for l in [Letter::B, Letter::C, Letter::D] {
        for n in 2..=5 {
            let w = compile_delta_basic(n, l).map_err(|e| e.to_string())?;
            let f = eval_word(&w).unwrap();
            ensure(
                f == GroupElement::delta(&basic(n, l)).unwrap(),
                format!("δ {n} {l}"),
            )?;
            ensure(exponent_sum_t(&w) == f.index(), format!("δ {n} {l} index"))?;
            words += 1;
        }
        for n in 3..=5 {
            let w = compile_tau_basic(n, l).map_err(|e| e.to_string())?;
            let f = eval_word(&w).unwrap();
            ensure(
                f == GroupElement::tau(&basic(n, l)).unwrap(),
                format!("τ {n} {l}"),
            )?;
            ensure(exponent_sum_t(&w) == f.index(), format!("τ {n} {l} index"))?;
            words += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let e = random_move_expr(&mut rng, 2).map_err(|e| e.to_string())?;
        let w = compile_expr(&e).map_err(|err| format!("{e}: {err}"))?;
        let f = eval_expr(&e).unwrap();
        ensure(eval_word(&w).unwrap() == f, format!("{e}"))?;
        ensure(exponent_sum_t(&w) == f.index(), format!("{e} index"))?;
        words += 1;
    }
    Ok(format!("{words} words"))
}

fn grigorchuk() -> Check {
    for w in ["aa", "bb", "cc", "dd", "bcd"] {
        let g: GrigWord = w.parse().unwrap();
        ensure(embed_word(&g).unwrap().is_identity(), w)?;
    }
    for (which, cap) in [(Relator::Ad4, 3), (Relator::Adacac4, 2)] {
        for k in 0..=cap {
            ensure(
                check_relator(k, which).map_err(|e| e.to_string())?,
                format!("{which} k={k}"),
            )?;
        }
    }
    Ok("5 words, 7 relators".into())
}

fn determinism() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lysenok"))
            .args(["verify", "all"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), "verify all failed")?;
    ensure(a.stdout == b.stdout, "outputs differ")?;
    Ok(format!("{} bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("fixed-point oracle", Duration::from_secs(5), fixed_point),
        (
            "word-combinatorics lemmas",
            Duration::from_secs(60),
            word_lemmas,
        ),
        ("normal form", Duration::MAX, normal_forms),
        ("measure", Duration::MAX, measures),
        ("psi identities", Duration::MAX, psi_identities),
        ("explicit formulas", Duration::MAX, explicit_formulas),
        ("compiler round trip", Duration::from_secs(600), compiler),
        ("grigorchuk relators", Duration::from_secs(600), grigorchuk),
        ("determinism", Duration::MAX, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|detail| {
                let t = start.elapsed();
                ensure(t <= budget, format!("took {t:.1?}, budget {budget:?}")).map(|_| detail)
            });
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {t:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why}; {t:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
