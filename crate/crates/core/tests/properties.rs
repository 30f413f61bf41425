use proptest::prelude::*;

use tricochain::algebra::{StructureTable, TriDendAlgebra};
use tricochain::cochain::{
    hoch_delta_on_psi, psi_eval, tri_delta, tri_delta_explicit, CochainBasisIndex,
    MultilinearInput, TriCochain,
};
use tricochain::cohomology::{assemble_tri_delta_matrix, cochain_dim};
use tricochain::exactlin::{
    format_rational, kernel_basis, parse_rational, rank, ratio, QMatrix, Rational,
};
use tricochain::fixtures;
use tricochain::free::ComTriMonomial;
use tricochain::tensor::{random_triples, tensor_product};
use tricochain::DeltaRoute;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // sparse-ish entries so rank deficiency is common
        prop::collection::vec(
            prop_oneof![3 => Just(ratio(0, 1)), 2 => small_rational()],
            r * c,
        )
        .prop_map(move |e| QMatrix::from_row_major(r, c, e).unwrap())
    })
}

fn table(dim: usize) -> impl Strategy<Value = StructureTable> {
    prop::collection::vec(
        prop_oneof![2 => Just(ratio(0, 1)), 1 => small_rational()],
        dim * dim * dim,
    )
    .prop_map(move |v| StructureTable::from_flat(dim, v).unwrap())
}

/// Arbitrary structure constants; most are not tri-dendriform.
fn any_tables(dim: usize) -> impl Strategy<Value = TriDendAlgebra> {
    (table(dim), table(dim), table(dim))
        .prop_map(|(p, s, d)| TriDendAlgebra::new("random", p, s, d).unwrap())
}

fn cochain(dim: usize, degree: usize) -> impl Strategy<Value = TriCochain> {
    prop::collection::vec(small_rational(), cochain_dim(degree, dim))
        .prop_map(move |c| TriCochain::from_coeffs(dim, degree, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_invariant_under_row_operations(m in matrix(6, 6), a in 0usize..6, b in 0usize..6, f in small_rational()) {
        let r = rank(&m);
        let mut swapped = m.clone();
        swapped.swap_rows(a % m.rows(), b % m.rows());
        prop_assert_eq!(rank(&swapped), r);
        if f != ratio(0, 1) {
            let mut scaled = m.clone();
            scaled.scale_row(a % m.rows(), &f);
            prop_assert_eq!(rank(&scaled), r);
        }
        // adding a multiple of one row to another
        let (i, j) = (a % m.rows(), b % m.rows());
        if i != j {
            let mut sheared = m.clone();
            for c in 0..m.cols() {
                let v = m.get(i, c) + &f * m.get(j, c);
                sheared.set(i, c, v);
            }
            prop_assert_eq!(rank(&sheared), r);
        }
    }

    #[test]
    fn rank_nullity_and_kernel(m in matrix(7, 7)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == ratio(0, 1)));
        }
        let k = QMatrix::from_columns(m.cols(), &ker).unwrap();
        prop_assert_eq!(rank(&k), ker.len());
    }

    #[test]
    fn rational_text_roundtrip(q in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn free_products_satisfy_axioms(
        xs in prop::collection::vec((prop::collection::vec(1usize..5, 1..3), prop::collection::vec(1usize..5, 0..3)), 3)
    ) {
        let m: Vec<ComTriMonomial> = xs.into_iter().map(|(b, t)| ComTriMonomial::new(b, t).unwrap()).collect();
        let (x, y, z) = (&m[0], &m[1], &m[2]);
        prop_assert_eq!(x.star(y).star(z), x.star(&y.star(z)));
        prop_assert_eq!(x.star(&y.star(z)), x.star(&z.star(y)));
        prop_assert_eq!(x.bullet(y), y.bullet(x));
        prop_assert_eq!(x.bullet(y).bullet(z), x.bullet(&y.bullet(z)));
        prop_assert_eq!(x.star(&y.bullet(z)), x.star(&y.star(z)));
        prop_assert_eq!(x.bullet(y).star(z), x.bullet(&y.star(z)));
    }

    #[test]
    fn tensor_product_is_bilinear(seed in any::<u64>(), c in small_rational()) {
        let b = fixtures::example_2d();
        let t = random_triples(2, 1, 2, seed).pop().unwrap();
        let (u, v, w) = t;
        let lhs = tensor_product(&b, &u.plus(&v.scaled(&c)), &w).unwrap();
        let rhs = tensor_product(&b, &u, &w).unwrap().plus(&tensor_product(&b, &v, &w).unwrap().scaled(&c));
        prop_assert_eq!(lhs, rhs);
        let lhs = tensor_product(&b, &w, &u.plus(&v.scaled(&c))).unwrap();
        let rhs = tensor_product(&b, &w, &u).unwrap().plus(&tensor_product(&b, &w, &v).unwrap().scaled(&c));
        prop_assert_eq!(lhs, rhs);
    }

    /// The explicit formulas are a consequence of identities in the free
    /// algebra alone, so they agree with extraction for any structure constants.
    #[test]
    fn explicit_matches_extraction_for_any_tables(b in any_tables(2), n in 1usize..=2) {
        let ext = assemble_tri_delta_matrix(&b, n, DeltaRoute::Extraction).unwrap();
        let exp = assemble_tri_delta_matrix(&b, n, DeltaRoute::Explicit).unwrap();
        prop_assert_eq!(ext, exp);
    }

    #[test]
    fn tri_delta_is_linear(g in cochain(2, 2), h in cochain(2, 2), c in small_rational()) {
        let b = fixtures::example_2d();
        let lhs = tri_delta(&b, &g.plus(&h.scaled(&c)));
        let rhs = tri_delta(&b, &g).plus(&tri_delta(&b, &h).scaled(&c));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(tri_delta_explicit(&b, &g.plus(&h.scaled(&c))).unwrap(), lhs);
    }

    #[test]
    fn psi_intertwines_on_random_cochains(g in cochain(2, 2), tuple in prop::collection::vec(0usize..2, 3)) {
        let b = fixtures::example_2d();
        let input = MultilinearInput::generator_basis(2, &tuple);
        prop_assert_eq!(psi_eval(&tri_delta(&b, &g), &input).unwrap(), hoch_delta_on_psi(&b, &g, &input).unwrap());
    }

    #[test]
    fn coboundaries_are_cocycles(f in cochain(2, 1)) {
        for b in [fixtures::example_1d(), fixtures::example_2d()] {
            let d = b.dim();
            let f = TriCochain::from_coeffs(d, 1, f.coeffs()[..cochain_dim(1, d)].to_vec()).unwrap();
            let g = tri_delta(&b, &f);
            prop_assert!(tri_delta(&b, &g).is_zero());
        }
    }

    #[test]
    fn cochain_json_roundtrip(g in cochain(2, 2)) {
        prop_assert_eq!(TriCochain::from_json(2, 2, &g.to_json()).unwrap(), g);
    }

    #[test]
    fn basis_index_is_bijective(n in 1usize..=3, d in 1usize..=2, probe in 0usize..1000) {
        let idx = CochainBasisIndex::new(n, d);
        let i = probe % idx.len();
        prop_assert_eq!(idx.index_of(&idx.cell(i)), Some(i));
    }
}
