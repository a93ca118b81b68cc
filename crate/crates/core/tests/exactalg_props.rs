#![allow(clippy::needless_range_loop)]

mod common;

use common::{det_oracle, pf_matchings, q, rank_oracle};
use jkpencil::exactalg::polymatrix::rank_symbolic;
use jkpencil::exactalg::{
    format_rational, parse_rational, pfaffian_poly, pfaffian_rat, ratio, smith_form, MultiPoly, PolyMatrix, RatMatrix,
    Rational, UniPoly,
};
use proptest::prelude::*;

fn skew_from(n: usize, vals: &[i64]) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![q(0); n]; n];
    let mut it = vals.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = q(*it.next().unwrap());
            m[i][j] = v.clone();
            m[j][i] = -v;
        }
    }
    m
}

fn skew_strategy(max_half: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_half).prop_flat_map(|h| {
        let n = 2 * h;
        prop::collection::vec(-4i64..=4, n * (n - 1) / 2).prop_map(move |v| skew_from(n, &v))
    })
}

fn rat_strategy() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffian_squared_is_determinant(m in skew_strategy(4)) {
        let pf = pfaffian_rat(&RatMatrix::from_rows(m.clone(), m.len())).unwrap();
        prop_assert_eq!(&pf * &pf, det_oracle(&m));
        prop_assert_eq!(pf, pf_matchings(&m));
    }

    #[test]
    fn polynomial_pfaffian_matches_pointwise(a in skew_strategy(3), bvals in prop::collection::vec(-3i64..=3, 15), x in -6i64..=6) {
        let n = a.len();
        let b = skew_from(n, &bvals[..n * (n - 1) / 2]);
        let (am, bm) = (RatMatrix::from_rows(a.clone(), n), RatMatrix::from_rows(b.clone(), n));
        let pf = pfaffian_poly(&PolyMatrix::linear(&am, &bm)).unwrap();
        let at: Vec<Vec<Rational>> = a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(u, v)| u + q(x) * v).collect()).collect();
        prop_assert_eq!(pf.eval(&q(x)), pf_matchings(&at));
    }

    #[test]
    fn symbolic_rank_is_max_sampled_rank(
        n in 1usize..=8,
        avals in prop::collection::vec(-2i64..=2, 64),
        bvals in prop::collection::vec(-2i64..=2, 64),
        zero_rows in 0usize..3,
    ) {
        let mk = |v: &[i64]| -> Vec<Vec<Rational>> {
            (0..n).map(|i| (0..n).map(|j| if i < zero_rows { q(0) } else { q(v[i * 8 + j]) }).collect()).collect()
        };
        let (a, b) = (mk(&avals), mk(&bvals));
        let pm = PolyMatrix::linear(&RatMatrix::from_rows(a.clone(), n), &RatMatrix::from_rows(b.clone(), n));
        let sampled = (0..25i64)
            .map(|t| {
                let l = ratio(t * 7 - 80, 3);
                let m: Vec<Vec<Rational>> = a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(u, v)| u + &l * v).collect()).collect();
                rank_oracle(&m)
            })
            .max()
            .unwrap();
        prop_assert_eq!(rank_symbolic(&pm), sampled);
    }

    #[test]
    fn smith_factors_divide_and_multiply_to_det(
        n in 1usize..=5,
        avals in prop::collection::vec(-2i64..=2, 25),
        bvals in prop::collection::vec(-1i64..=1, 25),
    ) {
        let mk = |v: &[i64]| RatMatrix::from_rows((0..n).map(|i| (0..n).map(|j| q(v[i * 5 + j])).collect()).collect(), n);
        let pm = PolyMatrix::linear(&mk(&avals), &mk(&bvals));
        let f = smith_form(&pm);
        for w in f.windows(2) {
            prop_assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        if f.len() == n {
            // det(A + lB) by interpolation through oracle determinants
            let xs: Vec<Rational> = (0..=n as i64).map(q).collect();
            let ys: Vec<Rational> = xs.iter().map(|x| det_oracle(&common::dense(&pm.eval(x)))).collect();
            let det = jkpencil::exactalg::pfaffian::interpolate(&xs, &ys);
            let prod = f.iter().fold(UniPoly::one(), |acc, p| &acc * p);
            prop_assert!(!det.is_zero());
            prop_assert_eq!(prod.canonical(), det.canonical());
        }
    }

    #[test]
    fn rational_round_trip(r in rat_strategy()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn unipoly_round_trip(c in prop::collection::vec(rat_strategy(), 0..6)) {
        let p = UniPoly::from_coeffs(c);
        let back: UniPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let canon = p.canonical();
        let factored: UniPoly = canon.to_factored_string().parse().unwrap();
        if !p.is_zero() {
            prop_assert_eq!(factored, canon);
        }
    }

    #[test]
    fn multipoly_round_trip(terms in prop::collection::vec((rat_strategy(), prop::collection::vec(0u32..3, 3)), 0..6)) {
        let p = terms.into_iter().fold(MultiPoly::zero(), |acc, (c, e)| &acc + &MultiPoly::term(c, e));
        let back: MultiPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
