mod common;

use common::q;
use jkpencil::exactalg::{MultiPoly, Rational};
use jkpencil::pencil::{eigenvalue_set, Eigen, ProjParam};
use jkpencil::poisson::{
    bi_involution_check, bracket_fn, casimir_shift, is_casimir, schouten_bracket, BiHamSystem, FunctionFamily,
    PolyBivector, PolyPencil,
};
use proptest::prelude::*;

fn mp(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn poly_strategy(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=max_deg, nvars)), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .filter(|(_, e)| e.iter().sum::<u32>() <= 2)
            .fold(MultiPoly::zero(), |acc, (c, e)| &acc + &MultiPoly::term(q(c), e))
    })
}

fn bivector_strategy(n: usize) -> impl Strategy<Value = PolyBivector> {
    prop::collection::vec(poly_strategy(n, 2), n * (n - 1) / 2).prop_map(move |ps| {
        let mut it = ps.into_iter();
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j, it.next().unwrap()));
            }
        }
        PolyBivector::from_entries(n, e).unwrap()
    })
}

fn so3_shift() -> PolyPencil {
    let a = PolyBivector::from_entries(3, vec![(0, 1, mp("x3")), (0, 2, mp("-x2")), (1, 2, mp("x1"))]).unwrap();
    let b = PolyBivector::from_entries(3, vec![(0, 1, mp("1"))]).unwrap();
    PolyPencil::new(a, b).unwrap()
}

fn plane() -> PolyPencil {
    let a = PolyBivector::from_entries(2, vec![(0, 1, mp("x1"))]).unwrap();
    let b = PolyBivector::from_entries(2, vec![(0, 1, mp("1"))]).unwrap();
    PolyPencil::new(a, b).unwrap()
}

/// A = x1 d1^d2, B = d1^d2 on R^3; x3 is a Casimir of both.
fn shift_example() -> PolyPencil {
    let a = PolyBivector::from_entries(3, vec![(0, 1, mp("x1"))]).unwrap();
    let b = PolyBivector::from_entries(3, vec![(0, 1, mp("1"))]).unwrap();
    PolyPencil::new(a, b).unwrap()
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-6i64..=6, n).prop_map(|v| v.into_iter().map(q).collect())
}

fn shifted_eigs(e: &[Eigen], by: &Rational) -> Vec<Eigen> {
    e.iter()
        .map(|x| match x {
            Eigen::Finite(r) => Eigen::Finite(r + by),
            other => other.clone(),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schouten_is_symmetric_and_bilinear(p in bivector_strategy(3), r in bivector_strategy(3), c in -3i64..=3) {
        let pq = schouten_bracket(&p, &r).unwrap();
        prop_assert_eq!(&pq, &schouten_bracket(&r, &p).unwrap());
        let cr = PolyBivector::zero(3).add_times(&MultiPoly::constant(q(c)), &r);
        let lhs = schouten_bracket(&p, &p.add(&cr)).unwrap();
        let pp = schouten_bracket(&p, &p).unwrap();
        for (key, val) in lhs.components.iter() {
            let expect = &pp.components.get(key).cloned().unwrap_or_else(MultiPoly::zero)
                + &pq.components.get(key).cloned().unwrap_or_else(MultiPoly::zero).scale(&q(c));
            prop_assert_eq!(val, &expect);
        }
    }

    #[test]
    fn constant_shift_keeps_bi_involution(g in poly_strategy(2, 2), h in poly_strategy(2, 2), c in -4i64..=4) {
        let p = plane();
        let shifted = PolyPencil::new(casimir_shift(&p, &MultiPoly::constant(q(c))).unwrap(), p.b().clone()).unwrap();
        let fam = FunctionFamily::plain(vec![g, h]);
        prop_assert_eq!(bi_involution_check(&p, &fam).pass(), bi_involution_check(&shifted, &fam).pass());
    }

    #[test]
    fn casimir_shift_translates_eigenvalues(x in point_strategy(3)) {
        let p = shift_example();
        let f = mp("x3");
        let shifted = PolyPencil::new(casimir_shift(&p, &f).unwrap(), p.b().clone()).unwrap();
        let before = eigenvalue_set(&p.eval_at(&x).unwrap()).unwrap().eigenvalues;
        let after = eigenvalue_set(&shifted.eval_at(&x).unwrap()).unwrap().eigenvalues;
        prop_assert_eq!(after, shifted_eigs(&before, &f.eval(&x)));
    }

    #[test]
    fn pointwise_brackets_agree_with_matrices(f in poly_strategy(3, 2), g in poly_strategy(3, 2), x in point_strategy(3), l in -3i64..=3) {
        let p = so3_shift();
        let lam = ProjParam::int(l);
        let sym = bracket_fn(&p, &f, &g, &lam).eval(&x);
        let m = p.eval_at(&x).unwrap().at(&lam);
        let df: Vec<Rational> = f.gradient(3).iter().map(|d| d.eval(&x)).collect();
        let dg: Vec<Rational> = g.gradient(3).iter().map(|d| d.eval(&x)).collect();
        let num: Rational = df.iter().zip(m.mul_vec(&dg)).map(|(a, b)| a * &b).sum();
        prop_assert_eq!(sym, num);
    }

    #[test]
    fn integrals_in_involution_with_a_hamiltonian_are_first_integrals(c in poly_strategy(1, 3)) {
        // Functions of the Casimir |x|^2 and of x3 commute with H = x3 under B.
        let p = so3_shift();
        let h = mp("x3");
        let v = p.a().apply(&h.gradient(3));
        let s = BiHamSystem::new(&p, v, vec![(ProjParam::int(0), h.clone())]).unwrap();
        let f = &mp("x1^2+x2^2+x3^2") + &(&c * &mp("x3"));
        if bracket_fn(&p, &f, &h, &ProjParam::int(0)).is_zero() {
            prop_assert!(s.derivative_of(&f).is_zero());
        }
        prop_assert!(is_casimir(&p, &mp("x1^2+x2^2+x3^2"), &ProjParam::int(0)));
    }
}
