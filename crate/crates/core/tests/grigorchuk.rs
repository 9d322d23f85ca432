use lysenok::grigorchuk::{
    check_relator, embed_letter, embed_word, lysenok_relator, GrigLetter, GrigWord, Relator,
};
use proptest::prelude::*;

/// The generator acting on a finite binary string (the usual tree action).
fn act(g: GrigLetter, v: &mut [bool]) {
    use GrigLetter::*;
    let Some((first, rest)) = v.split_first_mut() else {
        return;
    };
    match (g, *first) {
        (A, _) => *first = !*first,
        (B, false) | (C, false) => act(A, rest),
        (D, false) => {}
        (B, true) => act(C, rest),
        (C, true) => act(D, rest),
        (D, true) => act(B, rest),
    }
}

/// Whether the word fixes every vertex at the given depth.
fn trivial_on_tree(w: &GrigWord, depth: u32) -> bool {
    (0..1u32 << depth).all(|bits| {
        let v: Vec<bool> = (0..depth).map(|i| bits >> i & 1 == 1).collect();
        let mut u = v.clone();
        for &g in w.0.iter().rev() {
            act(g, &mut u);
        }
        u == v
    })
}

fn letter() -> impl Strategy<Value = GrigLetter> {
    prop::sample::select(GrigLetter::ALL.to_vec())
}

/// Words that are often trivial: a random conjugate of a known relation.
fn word() -> impl Strategy<Value = GrigWord> {
    let rel = prop::sample::select(vec![
        "",
        "aa",
        "bcd",
        "adadadad",
        "acacacacacacacac",
        "bb",
        "ab",
    ]);
    (
        prop::collection::vec(letter(), 0..6),
        rel,
        prop::collection::vec(letter(), 0..3),
    )
        .prop_map(|(u, r, noise)| {
            let mut w = u.clone();
            w.extend(r.parse::<GrigWord>().unwrap().0);
            w.extend(u.iter().rev());
            w.extend(noise);
            GrigWord(w)
        })
}

#[test]
fn relators_are_identities() {
    for which in [Relator::Ad4, Relator::Adacac4] {
        for k in 0..=which.check_cap() {
            assert!(check_relator(k, which).unwrap(), "{which} k = {k}");
            assert!(trivial_on_tree(&lysenok_relator(k, which).unwrap(), 12));
        }
    }
}

#[test]
fn generator_images() {
    let ab: GrigWord = "ab".parse().unwrap();
    let ba: GrigWord = "ba".parse().unwrap();
    assert_ne!(embed_word(&ab).unwrap(), embed_word(&ba).unwrap());
    for g in GrigLetter::ALL {
        assert!(!embed_letter(g).is_identity());
        assert!(embed_letter(g)
            .compose(embed_letter(g))
            .unwrap()
            .is_identity());
        assert_eq!(embed_letter(g).index(), 0);
    }
    assert_eq!(
        lysenok_relator(1, Relator::Adacac4).unwrap().to_string(),
        "acacacabacab".repeat(4)
    );
    assert!("ax".parse::<GrigWord>().is_err());
    assert_eq!("adacac4".parse::<Relator>().unwrap(), Relator::Adacac4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_in_the_full_group_matches_the_tree(w in word()) {
        prop_assert_eq!(embed_word(&w).unwrap().is_identity(), trivial_on_tree(&w, 10));
    }

    #[test]
    fn embedding_is_a_homomorphism(u in word(), v in word()) {
        let mut uv = u.0.clone();
        uv.extend(&v.0);
        prop_assert_eq!(
            embed_word(&GrigWord(uv)).unwrap(),
            embed_word(&u).unwrap().compose(&embed_word(&v).unwrap()).unwrap()
        );
    }
}
