mod common;

use common::{form_at, q, rank_oracle};
use jkpencil::exactalg::Rational;
use jkpencil::pencil::generate::{generate, random_blocks};
use jkpencil::pencil::{eigenvalue_set, jk_invariants, Eigen, ProjParam, SkewPencil};
use jkpencil::reduction::bilagrangian_completion;
use jkpencil::subspaces::{
    complement_at, core_subspace, is_admissible, is_bi_isotropic, is_bi_lagrangian, kernel_sum_subspace,
    mantle_subspace, Subspace,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> SkewPencil {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = random_blocks(3, 8, &mut rng);
    generate(&blocks, Some(seed)).unwrap()
}

/// Kernel vectors at up to two distinct singular parameters.
fn kernel_pairs(p: &SkewPencil, rng: &mut ChaCha8Rng) -> Vec<(ProjParam, Vec<Rational>)> {
    let mut out = Vec::new();
    for e in eigenvalue_set(p).unwrap().eigenvalues {
        let mu = match e {
            Eigen::Finite(r) => ProjParam::Finite(-r),
            Eigen::Infinite => ProjParam::Infinity,
            Eigen::Class(_) => continue,
        };
        if out.len() == 2 || rng.gen_bool(0.3) {
            continue;
        }
        let ker = p.at(&mu).kernel();
        let mut v = vec![q(0); p.n()];
        for i in 0..ker.nrows() {
            let c = q(rng.gen_range(-2..=2));
            for (x, y) in v.iter_mut().zip(ker.row_slice(i)) {
                *x += &c * y;
            }
        }
        out.push((mu, v));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn core_and_mantle_dimensions(seed in any::<u64>()) {
        let p = instance(seed);
        let inv = jk_invariants(&p).unwrap();
        let k = core_subspace(&p).unwrap();
        let m = mantle_subspace(&p).unwrap();
        prop_assert_eq!(k.dim(), inv.kronecker.iter().sum::<usize>());
        let jordan: usize = inv.jordan.iter().map(|e| 2 * e.halfsizes.iter().sum::<usize>()).sum();
        prop_assert_eq!(m.dim(), k.dim() + jordan);
        prop_assert!(m.contains(&k));
        prop_assert!(is_bi_isotropic(&p, &k));
    }

    #[test]
    fn complement_rank_nullity(seed in any::<u64>(), rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 8), 0..4), l in -3i64..=3) {
        let p = instance(seed);
        let n = p.n();
        let u = Subspace::span(n, rows.iter().map(|r| r[..n.min(8)].iter().map(|&x| q(x)).chain(std::iter::repeat(q(0))).take(n).collect()).collect());
        let form = form_at(&p, &q(l));
        let prod: Vec<Vec<Rational>> = u
            .vectors()
            .iter()
            .map(|row| (0..n).map(|j| (0..n).map(|i| &row[i] * &form[i][j]).sum()).collect())
            .collect();
        let r = if prod.is_empty() { 0 } else { rank_oracle(&prod) };
        prop_assert_eq!(complement_at(&p, &u, &ProjParam::int(l)).dim(), n - r);
    }

    #[test]
    fn kernel_sums_are_admissible_and_lie_in_the_mantle(seed in any::<u64>()) {
        let p = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let pairs = kernel_pairs(&p, &mut rng);
        let u = kernel_sum_subspace(&p, &pairs).unwrap();
        prop_assert!(is_bi_isotropic(&p, &u));
        let r = is_admissible(&p, &u).unwrap();
        prop_assert!(r.admissible);
        prop_assert!(mantle_subspace(&p).unwrap().contains(&u));
        // basis changes keep admissibility
        prop_assert!(is_admissible(&p.shifted(&q(3)), &u).unwrap().admissible);
        prop_assert!(is_admissible(&p.reversed(), &u).unwrap().admissible);
        // sums of admissible subspaces are admissible
        let pairs2 = kernel_pairs(&p, &mut rng);
        let w = kernel_sum_subspace(&p, &pairs2).unwrap();
        prop_assert!(is_admissible(&p, &u.sum(&w)).unwrap().admissible);
    }

    #[test]
    fn bi_lagrangians_sit_between_core_and_mantle(seed in any::<u64>()) {
        let p = instance(seed);
        let k = core_subspace(&p).unwrap();
        let l = bilagrangian_completion(&p, &k).unwrap().result;
        prop_assert!(is_bi_lagrangian(&p, &l));
        prop_assert!(l.contains(&k));
        prop_assert!(mantle_subspace(&p).unwrap().contains(&l));
    }
}
