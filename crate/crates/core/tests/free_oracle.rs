mod common;

use common::{bullet, closed_form, g, matching_identities, oracle, star, words};
use tricochain::free::{p_monomial, ComTriMonomial, Subset};

#[test]
fn closed_form_matches_rewriting_up_to_degree_4() {
    let mut count = 0;
    for degree in 1..=4 {
        for w in words(degree, 4) {
            assert_eq!(closed_form(&w), oracle(&w), "word {w:?}");
            count += 1;
        }
    }
    // 4 + 2*16 + 2*4*64 + 5*8*256
    assert_eq!(count, 4 + 32 + 512 + 10240);
}

#[test]
fn matching_identities_hold() {
    for (name, terms) in matching_identities() {
        let first = oracle(&terms[0]);
        for t in &terms {
            assert_eq!(oracle(t), first, "{name}: oracle");
            assert_eq!(closed_form(t), first, "{name}: closed form");
        }
    }
}

#[test]
fn p_monomials_are_the_multilinear_normal_forms() {
    // every multilinear word in x1..x3 normalizes to some P(3, I), and every
    // P(3, I) is reached
    let mut seen = std::collections::BTreeSet::new();
    for w in words(3, 3) {
        let m = oracle(&w);
        if let Some(s) = m.as_p_subset(3) {
            assert_eq!(p_monomial(3, s).unwrap(), m);
            seen.insert(s.mask());
        }
    }
    assert_eq!(seen.len(), 7);
    assert_eq!(
        oracle(&star(bullet(g(1), g(3)), g(2))),
        ComTriMonomial::new(vec![1, 3], vec![2]).unwrap()
    );
    assert_eq!(
        p_monomial(3, Subset::from_positions(&[2]).unwrap()).unwrap(),
        oracle(&star(g(2), star(g(3), g(1))))
    );
}
