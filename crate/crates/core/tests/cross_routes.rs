use bicensus::basic_graphs::partial_fraction;
use bicensus::census::build_table;
use bicensus::diag::{abel_check, nbi_diagonal_exact, tree_polys, y_power_count, y_series};
use bicensus::gf::{f_closed, GfWorkspace};
use bicensus::oracle::count_bipartite;
use bicensus::Poly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

fn table() -> &'static bicensus::CountTable {
    static T: OnceLock<bicensus::CountTable> = OnceLock::new();
    T.get_or_init(|| build_table(16, 4).unwrap())
}

#[test]
fn univariate_route_matches_census_for_higher_betti() {
    for k in 0..=4 {
        for n in 1..=16 {
            assert_eq!(
                nbi_diagonal_exact(k, n).unwrap(),
                table().diagonal_count(n, k).unwrap(),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn closed_forms_match_census_off_square() {
    let ws = GfWorkspace::build(8).unwrap();
    for k in 1..=4 {
        let f = f_closed(&ws, k).unwrap();
        for r in 0..=8 {
            for s in 0..=8 {
                let want = BigInt::from(table().get(r, s, k as usize).unwrap().clone());
                assert_eq!(f.integer_count(r, s).unwrap(), want, "({r},{s},{k})");
            }
        }
    }
}

#[test]
fn higher_tree_polynomials_are_generated_by_powers_of_y() {
    // t_n(p) = Σ_j C(p + j − 1, j) n!⟨x^n⟩Y^j
    for p in 1..=4u32 {
        let t = tree_polys(p, 12).unwrap();
        for n in 0..=12usize {
            let direct: BigUint = (0..=n)
                .map(|j| {
                    bicensus::arith::binomial(p as u64 + j as u64 - 1, j as u64)
                        * y_power_count(n, j)
                })
                .sum();
            assert_eq!(t.t[n], direct, "p={p} n={n}");
        }
    }
    let y = y_series(5);
    assert_eq!(y.integer_count(4).unwrap(), BigInt::from(64));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn census_is_symmetric_and_matches_oracle(r in 0usize..5, s in 0usize..5, extra in 0usize..5) {
        let q = (r + s).saturating_sub(1) + extra;
        let census = table().by_edges(r, s, q).unwrap();
        prop_assert_eq!(&census, &table().by_edges(s, r, q).unwrap());
        prop_assert_eq!(census, BigUint::from(count_bipartite(r, s, q).unwrap()));
    }

    #[test]
    fn partial_fractions_recombine(coeffs in prop::collection::vec(-20i64..20, 0..12), m in 1u32..5) {
        let p = Poly::from_ints(&coeffs);
        prop_assert_eq!(partial_fraction(&p, m).unwrap().recombine(), p);
    }

    #[test]
    fn abel_identity_at_random_points(n in 1usize..9, xn in 1i64..40, xd in 1i64..9, yn in -40i64..-1, yd in 1i64..9) {
        let x = BigRational::new(xn.into(), xd.into());
        let y = BigRational::new(yn.into(), yd.into());
        if let Ok(ok) = abel_check(n, &x, &y) {
            prop_assert!(ok);
        }
    }
}
