use super::finite::*;
use super::module::*;
use super::pairing::*;
use crate::linalg::{verify_complex, Poincare};
use crate::pd_algebra::{builtin, point, sphere};

#[test]
fn module_d_squared() {
    for name in ["sphere:2", "sphere:3", "cp:2"] {
        let a = builtin(name).unwrap();
        for k in 0..=3 {
            let cx = ce_module_complex(&a, k).unwrap();
            assert!(verify_complex(&cx.complex).unwrap().passed(), "{name} k={k}");
        }
    }
}

#[test]
fn pairing_suite() {
    for name in ["sphere:2", "sphere:3", "cp:2"] {
        let a = builtin(name).unwrap();
        for k in 0..=3 {
            let r = pairing_checks(&a, k).unwrap();
            assert!(r.passed(), "{name} k={k}: {r:?}");
            if k >= 2 {
                assert!(r.chain_pairs > 0, "{name} k={k}: {r:?}");
            }
            if k == 3 {
                assert!(r.mismatch_pairs > 0, "{name}: {r:?}");
            }
        }
    }
}

#[test]
fn homology_examples() {
    let s2 = sphere(2).unwrap();
    let h = ce_homology(&s2, &FiniteLieAlgebra::abelian(1), 2).unwrap();
    assert_eq!(h.homology, Poincare::from_pairs([(-1, 1), (0, 2), (1, 1)]));
    assert_eq!(h.homology, h.chains);
    let pt = point();
    let h = ce_homology(&pt, &FiniteLieAlgebra::affine(), 2).unwrap();
    assert_eq!(h.homology, Poincare::from_pairs([(-1, 1), (0, 1)]));
    assert!(ce_homology(&pt, &FiniteLieAlgebra::affine(), 0).is_err());
}

#[test]
fn sl2_on_s2_golden() {
    let s2 = sphere(2).unwrap();
    let h = ce_homology(&s2, &FiniteLieAlgebra::sl2(), 3).unwrap();
    assert_eq!(h.chains, Poincare::from_pairs([(-3, 1), (-2, 3), (-1, 12), (0, 10), (1, 12), (2, 3), (3, 1)]));
    assert_eq!(h.homology, Poincare::from_pairs([(-3, 1), (-1, 3), (0, 1), (1, 6), (3, 1)]));
    assert_eq!(h.homology.euler(), h.chains.euler());
}

#[test]
fn invalid_lie_algebras_rejected() {
    use crate::rational::int;
    // [x, y] = x with [y, x] = x violates antisymmetry.
    let b = vec![vec![vec![], vec![(0, int(1))]], vec![vec![(0, int(1))], vec![]]];
    assert!(FiniteLieAlgebra::new("bad", vec!["x".into(), "y".into()], vec![0, 0], b).is_err());
    // Heisenberg-like table that fails Jacobi: [x,y]=z, [y,z]=x, [z,x]=z.
    let mut b = vec![vec![vec![]; 3]; 3];
    b[0][1] = vec![(2, int(1))];
    b[1][0] = vec![(2, int(-1))];
    b[1][2] = vec![(0, int(1))];
    b[2][1] = vec![(0, int(-1))];
    b[2][0] = vec![(2, int(1))];
    b[0][2] = vec![(2, int(-1))];
    assert!(FiniteLieAlgebra::new("bad", vec!["x".into(), "y".into(), "z".into()], vec![0; 3], b).is_err());
    assert!(FiniteLieAlgebra::builtin("gl7").is_err());
    assert_eq!(FiniteLieAlgebra::builtin("abelian:3").unwrap().dim(), 3);
}

#[test]
fn singleton_pairing_is_poincare_duality() {
    use crate::ls_model::{Gen, LsModel};
    use crate::rational::int;
    let a = builtin("cp:2").unwrap();
    let m = LsModel::new(&a, 1);
    for x in 0..a.size() as u16 {
        for y in 0..a.size() as u16 {
            let ls = m.reduce(&[Gen::Iota(0, x)]).unwrap();
            let b = ls.keys().next().unwrap();
            let ce = vec![CeBlock { word: vec![0], label: y }];
            let want = a.eps_vec(a.mul(x as usize, y as usize));
            assert_eq!(pair_basis(&m, b, &ce), want, "{x} {y}");
        }
    }
    // ω_12 against the two singleton blocks: different partitions.
    let s3 = sphere(3).unwrap();
    let m = LsModel::new(&s3, 2);
    let w = m.reduce(&[Gen::Omega(0, 1)]).unwrap();
    let ce = vec![CeBlock { word: vec![0], label: 1 }, CeBlock { word: vec![1], label: 1 }];
    assert_eq!(pair_basis(&m, w.keys().next().unwrap(), &ce), int(0));
}

#[test]
fn singleton_module_complex_is_the_algebra() {
    let a = builtin("cp:2").unwrap();
    let cx = ce_module_complex(&a, 1).unwrap();
    // Block degree |a| − 1 − (n − 1) = |a| − n.
    let dims: Vec<(i64, usize)> = cx.basis.iter().map(|(d, v)| (*d, v.len())).collect();
    assert_eq!(dims, vec![(-4, 1), (-2, 1), (0, 1)]);
}

#[test]
fn module_dimensions_reflect_ls() {
    use crate::ls_model::LsModel;
    for name in ["sphere:2", "sphere:3", "cp:2", "product:sphere:2,sphere:3"] {
        let a = builtin(name).unwrap();
        for k in 0..=3 {
            let ls = LsModel::new(&a, k).basis();
            let ce = ce_basis(&a, k);
            let ls_dims: Vec<(i64, usize)> = ls.iter().map(|(d, v)| (*d, v.len())).collect();
            let mut ce_dims: Vec<(i64, usize)> = ce.iter().map(|(d, v)| (-*d, v.len())).collect();
            ce_dims.sort();
            assert_eq!(ls_dims, ce_dims, "{name} k={k}");
        }
    }
}
