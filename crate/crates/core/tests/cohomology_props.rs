mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{oracle_is_cocycle, pool, random_change, random_valid_tensor, rng, small_int};
use uext::algebra::CommAlgebra;
use uext::cohomology::{self, Cochain, Cocycle2};
use uext::lie;
use uext::linalg::RationalMatrix;
use uext::tensor;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_valid_tensor(&mut r, &pool(4), 4);
        let n = w.n();
        let a = CommAlgebra::new(w).unwrap();
        let p = r.gen_range(0..=3usize);
        let values = (0..n.pow(p as u32)).map(|_| small_int(&mut r)).collect();
        let omega = Cochain::from_values(n, p, values).unwrap();
        let dd = cohomology::coboundary(&a, &cohomology::coboundary(&a, &omega).unwrap()).unwrap();
        prop_assert_eq!(dd.degree(), p + 2);
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn row_matrices_are_cocycles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_valid_tensor(&mut r, &pool(5), 5);
        for k in 1..=w.n() {
            let m = w.row_matrix(k).unwrap();
            prop_assert!(cohomology::is_cocycle(&w, &m));
            prop_assert!(oracle_is_cocycle(&w, &m));
        }
    }

    #[test]
    fn cocycle_space_matches_invariance_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_valid_tensor(&mut r, &pool(4), 4);
        let n = w.n();
        let z = cocycle_space2(&w);
        for m in &z {
            prop_assert!(oracle_is_cocycle(&w, m));
        }
        // a random symmetric matrix is a cocycle exactly when the oracle says so
        let mut s = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = small_int(&mut r);
                s[(i, j)] = v.clone();
                s[(j, i)] = v;
            }
        }
        prop_assert_eq!(cohomology::is_cocycle(&w, &s), oracle_is_cocycle(&w, &s));
    }

    #[test]
    fn h2_dimension_is_basis_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_valid_tensor(&mut r, &pool(4), 4);
        let b = random_change(&mut r, w.n());
        let h = cohomology::h2(&w).unwrap();
        let h_moved = cohomology::h2(&tensor::transform(&w, &b).unwrap()).unwrap();
        prop_assert_eq!((h.dim_z2, h.dim_b2, h.dim_h2), (h_moved.dim_z2, h_moved.dim_b2, h_moved.dim_h2));
        prop_assert_eq!(h.dim_h2, h.dim_z2 - h.dim_b2);
        prop_assert_eq!(h.representatives.len(), h.dim_h2);
    }

    #[test]
    fn extensions_are_valid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_valid_tensor(&mut r, &pool(4), 4);
        let z = cohomology::cocycle_space2(&w);
        let n = w.n();
        let mut m = RationalMatrix::zeros(n, n);
        for basis in &z {
            m = m.add(&basis.scale(&small_int(&mut r))).unwrap();
        }
        let ext = cohomology::extend_with_cocycle(&w, &Cocycle2::new(&w, m).unwrap()).unwrap();
        prop_assert!(tensor::validate(&ext).is_valid());
        prop_assert!(ext.slice_matrix(n + 1).unwrap().is_zero());
    }
}

fn cocycle_space2(w: &uext::ExtensionTensor) -> Vec<RationalMatrix> {
    cohomology::cocycle_space2(w)
}

#[test]
fn representative_extensions_satisfy_jacobi() {
    let sl2 = lie::preset_algebra("sl2").unwrap();
    let mut r = rng(11);
    for _ in 0..12 {
        let w = random_valid_tensor(&mut r, &pool(3), 3);
        for ext in cohomology::enumerate_extensions(&w).unwrap() {
            let rep = lie::jacobi_check(&ext, &sl2, None).unwrap();
            assert!(rep.holds);
        }
    }
}
