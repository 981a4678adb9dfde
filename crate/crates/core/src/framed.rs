//! The framed LS model fG_A(U) for A = H*(S²): G_A(U) with a degree-1
//! generator α_u per vertex, dα_u = ι_u(e_A) = 2ι_u(υ), and the framed
//! cocomposition fG_A(U) → fG_A(U/W) ⊗ fe₂^∨(W).

use crate::error::Error;
use crate::linalg::{betti_numbers, verify_complex, Poincare};
use crate::ls_model::cocompose::{cocompose, coassociativity_defect, tensor_differential, Split, TensorLs};
use crate::ls_model::{Gen, LsBasis, LsComplex, LsElement, LsModel};
use crate::pd_algebra::PdAlgebra;
use crate::rational::int;

/// Accepts exactly the cohomology of S² (up to the scale of ε).
pub fn check_algebra(a: &PdAlgebra) -> Result<(), Error> {
    let is_s2 = a.dim() == 2 && a.size() == 2 && a.degree(a.unit()) == 0 && !a.has_differential();
    if is_s2 {
        Ok(())
    } else {
        Err(Error::InvalidAlgebra(format!(
            "the framed model is only available for H*(S²), got `{}`; framed models in higher dimensions \
             (with Pontryagin/Euler generators) are conjectural",
            a.name()
        )))
    }
}

pub fn framed_model(a: &PdAlgebra, k: usize) -> Result<LsModel<'_>, Error> {
    check_algebra(a)?;
    Ok(LsModel::framed(a, k))
}

pub fn framed_differential(model: &LsModel, x: &LsElement) -> LsElement {
    debug_assert!(model.framed);
    model.differential(x)
}

pub fn framed_complex(a: &PdAlgebra, k: usize) -> Result<LsComplex, Error> {
    framed_model(a, k)?.complex()
}

pub fn framed_betti(a: &PdAlgebra, k: usize) -> Result<Poincare, Error> {
    betti_numbers(&framed_complex(a, k)?.complex)
}

pub fn framed_cocompose(model: &LsModel, w: u32, x: &LsElement) -> Result<TensorLs, Error> {
    check_algebra(model.alg)?;
    cocompose(model, w, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedReport {
    pub k: usize,
    pub dims: Poincare,
    pub d_squared_zero: bool,
    pub betti: Poincare,
    pub euler: i64,
    /// W ⊆ U checked for d∘Δ_W = Δ_W∘d, and the failures.
    pub subsets: usize,
    pub chain_map_failures: usize,
    pub coassociativity_pairs: usize,
    pub coassociativity_failures: usize,
    /// α-free elements form a subcomplex equal to G_A(k).
    pub alpha_free_subcomplex: bool,
    /// Killing α is not a chain map: d(α_1) = 2ι_1(υ) survives.
    pub alpha_projection_fails: bool,
}

impl FramedReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero
            && (self.k == 0 || self.euler == 0)
            && self.chain_map_failures == 0
            && self.coassociativity_failures == 0
            && self.alpha_free_subcomplex
            && (self.k == 0 || self.alpha_projection_fails)
    }
}

/// All framed checks at arity k: d², Betti numbers, χ, chain compatibility
/// of Δ_W for every W, coassociativity for nested W′ ⊆ W when
/// `coassociativity` is set, and the relation to G_A(k).
pub fn framed_checks(a: &PdAlgebra, k: usize, coassociativity: bool) -> Result<FramedReport, Error> {
    let model = framed_model(a, k)?;
    let cx = model.complex()?;
    let d_squared_zero = verify_complex(&cx.complex)?.passed();
    let betti = if d_squared_zero { betti_numbers(&cx.complex)? } else { Poincare::default() };
    let basis: Vec<LsBasis> = cx.basis.values().flatten().cloned().collect();
    let mut rep = FramedReport {
        k,
        dims: cx.complex.dimension_polynomial(),
        d_squared_zero,
        euler: betti.euler(),
        betti,
        subsets: 1 << k,
        chain_map_failures: 0,
        coassociativity_pairs: 0,
        coassociativity_failures: 0,
        alpha_free_subcomplex: true,
        alpha_projection_fails: false,
    };
    for w in 0..1u32 << k {
        let split = Split::new(&model, w)?;
        for b in &basis {
            let lhs = split.apply(&model, &model.differential_basis(b));
            let rhs = tensor_differential(&split.left, &split.apply_basis(&model, b));
            if lhs != rhs {
                rep.chain_map_failures += 1;
            }
        }
        if coassociativity {
            let mut w2 = w;
            loop {
                rep.coassociativity_pairs += 1;
                for b in &basis {
                    if coassociativity_defect(&model, w, w2, b)? {
                        rep.coassociativity_failures += 1;
                    }
                }
                if w2 == 0 {
                    break;
                }
                w2 = (w2 - 1) & w;
            }
        }
    }

    let plain = LsModel::new(a, k);
    let plain_basis: Vec<LsBasis> = plain.basis().into_values().flatten().collect();
    let alpha_free: Vec<&LsBasis> = basis.iter().filter(|b| b.alphas == 0).collect();
    rep.alpha_free_subcomplex = alpha_free.len() == plain_basis.len()
        && alpha_free.iter().zip(&plain_basis).all(|(x, y)| *x == y)
        && plain_basis.iter().all(|b| model.differential_basis(b) == plain.differential_basis(b));
    if k > 0 {
        let alpha = model.reduce(&[Gen::Alpha(0)])?;
        let d_alpha = model.differential(&alpha);
        let projected: LsElement = d_alpha.iter().filter(|(b, _)| b.alphas == 0).map(|(b, c)| (b.clone(), c.clone())).collect();
        rep.alpha_projection_fails = !projected.is_zero();
        debug_assert_eq!(projected, model.reduce(&[Gen::Iota(0, 1)])?.scaled(&int(2)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd_algebra::{builtin, sphere};
    use crate::rational::one;

    fn s2() -> PdAlgebra {
        sphere(2).unwrap()
    }

    #[test]
    fn d_alpha() {
        let a = s2();
        let m = framed_model(&a, 1).unwrap();
        let alpha = m.reduce(&[Gen::Alpha(0)]).unwrap();
        assert_eq!(framed_differential(&m, &alpha), m.reduce(&[Gen::Iota(0, 1)]).unwrap().scaled(&int(2)));
        let x = m.reduce(&[Gen::Iota(0, 1), Gen::Alpha(0)]).unwrap();
        assert!(framed_differential(&m, &x).is_zero());
    }

    /// SO(3) × framed configurations of k − 1 points in ℝ² (trivial frame
    /// bundle): (1 + t³)(1 + t)^{k−1} Π_{i=1}^{k−2} (1 + i t).
    fn oracle(k: usize) -> Poincare {
        if k == 0 {
            return Poincare::one();
        }
        let mut p = Poincare::from_pairs([(0, 1), (3, 1)]);
        for _ in 1..k {
            p = p.mul(&Poincare::from_pairs([(0, 1), (1, 1)]));
        }
        for i in 1..k.saturating_sub(1) {
            p = p.mul(&Poincare::from_pairs([(0, 1), (1, i as i64)]));
        }
        p
    }

    #[test]
    fn betti_numbers_match_the_fibration() {
        let a = s2();
        for k in 0..=3 {
            assert_eq!(framed_betti(&a, k).unwrap(), oracle(k), "k = {k}");
        }
    }

    #[test]
    fn small_betti_numbers() {
        let a = s2();
        assert_eq!(framed_betti(&a, 0).unwrap(), Poincare::one());
        assert_eq!(framed_betti(&a, 1).unwrap(), Poincare::from_pairs([(0, 1), (3, 1)]));
        assert_eq!(framed_betti(&a, 2).unwrap().euler(), 0);
    }

    #[test]
    fn rejects_other_algebras() {
        for name in ["sphere:3", "cp:2", "product:sphere:2,sphere:2"] {
            let a = builtin(name).unwrap();
            assert!(matches!(framed_model(&a, 2), Err(Error::InvalidAlgebra(_))), "{name}");
        }
    }

    #[test]
    fn cocomposition_examples() {
        let a = s2();
        let m = framed_model(&a, 2).unwrap();
        let split = Split::new(&m, 0b11).unwrap();
        // α_1 with 1 ∈ W ↦ α_* ⊗ 1 + 1 ⊗ α_1.
        let t = framed_cocompose(&m, 0b11, &m.reduce(&[Gen::Alpha(0)]).unwrap()).unwrap();
        let star_alpha = split.left.reduce(&[Gen::Alpha(0)]).unwrap();
        let right_alpha = split.right.reduce(&[Gen::Alpha(0)]).unwrap();
        let mut want = TensorLs::new();
        want.add_term((star_alpha.keys().next().unwrap().clone(), split.right.unit()), one());
        want.add_term((split.left.unit(), right_alpha.keys().next().unwrap().clone()), one());
        assert_eq!(t, want);
        // ω_12 with 1, 2 ∈ W ↦ α_* ⊗ 1 + 1 ⊗ ω_12.
        let t = framed_cocompose(&m, 0b11, &m.reduce(&[Gen::Omega(0, 1)]).unwrap()).unwrap();
        let omega = split.right.reduce(&[Gen::Omega(0, 1)]).unwrap();
        let mut want = TensorLs::new();
        want.add_term((star_alpha.keys().next().unwrap().clone(), split.right.unit()), one());
        want.add_term((split.left.unit(), omega.keys().next().unwrap().clone()), one());
        assert_eq!(t, want);
    }

    #[test]
    fn checks_up_to_three() {
        let a = s2();
        for k in 0..=3 {
            let r = framed_checks(&a, k, true).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
