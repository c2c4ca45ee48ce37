//! The cone-side route to torsion: graded pieces of the module of
//! differentials on the cone, computed directly from its presentation by the
//! quadric relations, independent of the ambient-side section spaces.
//!
//! # Coordinate model
//!
//! Write `R` for the coordinate ring of the cone, the quotient of the
//! polynomial ring in `y_0, …, y_n` by the ideal of the Veronese variety.
//! Both `y_j` and `dy_j` carry internal degree 1, and the substitution
//! `y_j ↦ t_j` identifies the degree-`e` piece `R_e` with the degree-`ed`
//! forms in `x`. The degree-`m` piece of the differential module is
//! presented as
//!
//! ```text
//! (Ω_R)_m  =  (⊕_j R_{m-1}·dy_j) / span{ g·df : g monomial of degree m-2,
//!                                         f a quadric generator }
//! ```
//!
//! with all `y`-coefficients pushed through the substitution, so the ambient
//! space is the tuple space `S_{(m-1)d}^{n+1}` — the same coordinate model
//! the conormal sections use. Taking the span over ideal *generators* only
//! is justified by the Leibniz rule (`d(gf) ≡ g·df` modulo the ideal times
//! the module) and guarded by the degree-2/degree-3 generation check in
//! [`quadric_relations`].
//!
//! Contraction with the Euler vector field sends `Σ g_j dy_j` to
//! `Σ g_j y_j`, a map onto the degree-`m` part of the maximal ideal; its
//! kernel `N_m` carries all the torsion. Torsion itself is detected by
//! saturation: the subspace of `N_m` killed by every monomial of degree `k`
//! stabilizes as `k` grows, and two consecutive equal kernels are accepted
//! as stabilization. No stabilization within the configured window is a
//! distinguished inconclusive outcome, never a number.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{ExactMatrix, Subspace};
use crate::poly::Polynomial;
use crate::sections::{conormal_labels, product_monomial, quadric_relations, VeroneseContext};

/// Default saturation window: number of consecutive multiplication kernels
/// compared before giving up.
pub const DEFAULT_WINDOW: usize = 3;

/// Default bound on the total internal degree the saturation loop explores.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// One internal-degree slice of the differential module, presented as
/// ambient space modulo relations.
#[derive(Debug, Clone)]
pub struct GradedModulePiece {
    context: VeroneseContext,
    m: u32,
    ambient_labels: Vec<String>,
    relation_space: Subspace,
}

impl GradedModulePiece {
    pub fn internal_degree(&self) -> u32 {
        self.m
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_labels.len()
    }

    pub fn ambient_labels(&self) -> &[String] {
        &self.ambient_labels
    }

    pub fn relation_space(&self) -> &Subspace {
        &self.relation_space
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim() - self.relation_space.dim()
    }

    pub fn context(&self) -> &VeroneseContext {
        &self.context
    }
}

/// The degree-`m` piece of the differential module. Fails only if the
/// quadric generation check fails.
pub fn omega_piece(ctx: &VeroneseContext, m: u32) -> Result<GradedModulePiece, Error> {
    let quadrics = quadric_relations(ctx)?;
    Ok(omega_piece_with(ctx, m, &quadrics))
}

fn omega_piece_with(ctx: &VeroneseContext, m: u32, quadrics: &[Polynomial]) -> GradedModulePiece {
    assert!(m >= 1);
    let nv = ctx.num_y_vars();
    let x_coeff = ctx.x_basis((m - 1) * ctx.d());
    let ambient_dim = nv * x_coeff.len();
    let mut relation_vectors = Vec::new();
    if m >= 2 {
        let partials: Vec<Vec<Polynomial>> = quadrics
            .iter()
            .map(|f| (0..nv).map(|j| f.partial_derivative(j)).collect())
            .collect();
        for g in crate::poly::monomial_basis(nv, m - 2) {
            let g_poly = Polynomial::from_monomial(g);
            for partial in &partials {
                let mut rho = vec![BigRational::zero(); ambient_dim];
                let mut nonzero = false;
                for (j, df_j) in partial.iter().enumerate() {
                    if df_j.is_zero() {
                        continue;
                    }
                    let coeff = g_poly.mul(df_j).substitute(ctx.t_polys());
                    if coeff.is_zero() {
                        continue;
                    }
                    nonzero = true;
                    for (c, val) in coeff.coeff_vector(&x_coeff).into_iter().enumerate() {
                        rho[j * x_coeff.len() + c] = val;
                    }
                }
                if nonzero {
                    relation_vectors.push(rho);
                }
            }
        }
    }
    let relation_space = Subspace::from_spanning(relation_vectors, ambient_dim);
    GradedModulePiece {
        context: ctx.clone(),
        m,
        ambient_labels: conormal_labels(ctx, m),
        relation_space,
    }
}

/// Matrix of the contraction `Σ g_j dy_j ↦ Σ g_j y_j` from the ambient
/// space of the degree-`m` piece to `R_m ≅ S_{md}`: one entry per column,
/// the product monomial `μ·t_j`.
fn contraction_matrix(ctx: &VeroneseContext, m: u32) -> ExactMatrix {
    assert!(m >= 1);
    let x_coeff = ctx.x_basis((m - 1) * ctx.d());
    let x_target = ctx.x_basis(m * ctx.d());
    let mut a = ExactMatrix::zeros(x_target.len(), ctx.num_y_vars() * x_coeff.len());
    for (j, tj) in ctx.t_basis().iter().enumerate() {
        for (c, mu) in x_coeff.iter().enumerate() {
            let row = x_target.binary_search(&mu.mul(tj)).expect("product in basis");
            a.set(row, j * x_coeff.len() + c, BigRational::one());
        }
    }
    a
}

/// Contraction with the Euler vector field on a graded piece, together with
/// its kernel.
#[derive(Debug, Clone)]
pub struct ContractionData {
    pub piece: GradedModulePiece,
    pub matrix: ExactMatrix,
    kernel: Subspace,
}

impl ContractionData {
    /// The ambient-coordinate kernel of the contraction; it contains the
    /// relation space, and the quotient by the relations is the module
    /// `N_m` the torsion lives in.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// Dimension of `N_m` in the quotient presentation,
    /// `quotient_dim - rank(contraction)`.
    pub fn n_dim(&self) -> usize {
        self.kernel.dim() - self.piece.relation_space().dim()
    }
}

/// Build the contraction on the degree-`m` piece and verify it is well
/// defined: every quadric generator satisfies the degree-2 Euler identity
/// after substitution, and every relation basis vector is annihilated by
/// the matrix.
pub fn contraction(ctx: &VeroneseContext, m: u32) -> Result<ContractionData, Error> {
    let quadrics = quadric_relations(ctx)?;
    contraction_with(ctx, m, &quadrics)
}

fn contraction_with(
    ctx: &VeroneseContext,
    m: u32,
    quadrics: &[Polynomial],
) -> Result<ContractionData, Error> {
    let nv = ctx.num_y_vars();
    for (index, f) in quadrics.iter().enumerate() {
        // ξ⌟df = Σ y_j ∂f/∂y_j = 2f, which must vanish in R
        let mut euler = Polynomial::zero(nv);
        for j in 0..nv {
            euler = euler.add(&f.partial_derivative(j).mul(&Polynomial::variable(nv, j)));
        }
        if euler != f.scale(&BigRational::from_integer(2.into()))
            || !euler.substitute(ctx.t_polys()).is_zero()
        {
            return Err(Error::ContractionNotWellDefined {
                index,
                m: m as usize,
            });
        }
    }
    let piece = omega_piece_with(ctx, m, quadrics);
    let matrix = contraction_matrix(ctx, m);
    for (index, rho) in piece.relation_space().basis().iter().enumerate() {
        if !matrix.mul_vector(rho).iter().all(Zero::is_zero) {
            return Err(Error::ContractionNotWellDefined {
                index,
                m: m as usize,
            });
        }
    }
    let kernel = matrix.kernel_basis().with_labels(piece.ambient_labels().to_vec());
    Ok(ContractionData {
        piece,
        matrix,
        kernel,
    })
}

/// Torsion dimension in internal degree `m`, detected by saturation: the
/// subspace of `N_m` annihilated by all monomials of degree `k`, for the
/// smallest `k ≤ window` at which two consecutive such kernels agree.
///
/// `max_degree` bounds the total internal degree explored; running out of
/// window or degree budget before stabilization yields
/// [`Error::SaturationInconclusive`].
pub fn torsion_direct(
    ctx: &VeroneseContext,
    m: u32,
    window: usize,
    max_degree: u32,
) -> Result<usize, Error> {
    assert!(m >= 1 && window >= 1);
    let quadrics = quadric_relations(ctx)?;
    torsion_direct_with(ctx, &quadrics, m, window, max_degree)
}

fn torsion_direct_with(
    ctx: &VeroneseContext,
    quadrics: &[Polynomial],
    m: u32,
    window: usize,
    max_degree: u32,
) -> Result<usize, Error> {
    let data = contraction_with(ctx, m, quadrics)?;
    let s = data.piece.relation_space().dim();
    if data.kernel().dim() == s {
        // N_m is zero, so its torsion is too
        return Ok(0);
    }

    let inconclusive = Error::SaturationInconclusive {
        m: m as usize,
        window,
        max_degree: max_degree as usize,
    };

    // dims[k] = dim V_k where V_k is the ambient-coordinate space of
    // elements of ker(contraction) whose degree-k multiples all lie in the
    // relations; V_0 is the relation space itself.
    let mut prev_dim = s;
    let mut prev_cand: Option<Vec<Vec<BigRational>>> = None;
    for k in 1..=(window as u32 + 1) {
        if m + k > max_degree {
            return Err(inconclusive);
        }
        let target = omega_piece_with(ctx, m + k, quadrics);
        let dim_vk = saturation_kernel_dim(
            ctx,
            &data,
            &target,
            k,
            if k >= 2 { Some(prev_dim) } else { None },
            &mut prev_cand,
        );
        debug_assert!(dim_vk >= s);
        if k >= 2 && dim_vk == prev_dim {
            // K_{k-1} = K_k with k-1 <= window: stabilized
            return Ok(prev_dim - s);
        }
        prev_dim = dim_vk;
    }
    Err(inconclusive)
}

/// Intersect the candidate space with the conditions "multiplication by μ
/// lands in the relations" over all degree-`k` monomials `μ`, returning the
/// resulting dimension. `floor`, when given, is a known lower bound that is
/// only attained when the space has stopped shrinking, so the loop may stop
/// early there.
fn saturation_kernel_dim(
    ctx: &VeroneseContext,
    data: &ContractionData,
    target: &GradedModulePiece,
    k: u32,
    floor: Option<usize>,
    out_cand: &mut Option<Vec<Vec<BigRational>>>,
) -> usize {
    let m = data.piece.internal_degree();
    let src_coeff = ctx.x_basis((m - 1) * ctx.d());
    let tgt_coeff = ctx.x_basis((m + k - 1) * ctx.d());
    let nv = ctx.num_y_vars();
    let relations = target.relation_space();

    let mut cand: Vec<Vec<BigRational>> = data.kernel().basis().to_vec();
    for mu in crate::poly::monomial_basis(nv, k) {
        if let Some(f) = floor {
            if cand.len() == f {
                break;
            }
        }
        if cand.is_empty() {
            break;
        }
        // index map of multiplication by the x-image of μ
        let image = product_monomial(ctx, &mu);
        debug_assert_eq!(image.degree(), k * ctx.d());
        let mono_map: Vec<usize> = src_coeff
            .iter()
            .map(|s| {
                tgt_coeff
                    .binary_search(&s.mul(&image))
                    .expect("multiplied monomial in target basis")
            })
            .collect();

        // condition matrix: column per candidate, reduced mod relations
        let mut cols = Vec::with_capacity(cand.len());
        let mut all_zero = true;
        for v in &cand {
            let mut w = vec![BigRational::zero(); target.ambient_dim()];
            for j in 0..nv {
                for (c, &t) in mono_map.iter().enumerate() {
                    let val = &v[j * src_coeff.len() + c];
                    if !val.is_zero() {
                        w[j * tgt_coeff.len() + t] = val.clone();
                    }
                }
            }
            let red = relations.reduce(&w);
            if all_zero && !red.iter().all(Zero::is_zero) {
                all_zero = false;
            }
            cols.push(red);
        }
        if all_zero {
            continue;
        }
        let rows = (0..target.ambient_dim())
            .map(|row| cols.iter().map(|c| c[row].clone()).collect())
            .collect();
        let combos = ExactMatrix::from_rows(rows).kernel_basis();
        cand = combos
            .basis()
            .iter()
            .map(|combo| {
                let mut v = vec![BigRational::zero(); data.piece.ambient_dim()];
                for (coeff, old) in combo.iter().zip(&cand) {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (acc, x) in v.iter_mut().zip(old) {
                        if !x.is_zero() {
                            *acc += coeff * x;
                        }
                    }
                }
                v
            })
            .collect();
    }
    let dim = cand.len();
    *out_cand = Some(cand);
    dim
}

/// Sum of [`torsion_direct`] over a range of internal degrees. When the
/// range contains degree 2 this equals the total torsion dimension.
pub fn total_torsion_direct(
    ctx: &VeroneseContext,
    degrees: std::ops::RangeInclusive<u32>,
    window: usize,
    max_degree: u32,
) -> Result<usize, Error> {
    assert!(!degrees.is_empty(), "degree range must be nonempty");
    let quadrics = quadric_relations(ctx)?;
    let mut total = 0;
    for m in degrees {
        total += torsion_direct_with(ctx, &quadrics, m, window, max_degree)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_piece_degree_two() {
        let ctx = VeroneseContext::new(1, 2);
        let piece = omega_piece(&ctx, 2).unwrap();
        assert_eq!(piece.ambient_dim(), 9);
        assert_eq!(piece.relation_space().dim(), 1);
        assert_eq!(piece.quotient_dim(), 8);
    }

    #[test]
    fn twisted_cubic_piece_degree_two() {
        let ctx = VeroneseContext::new(1, 3);
        let piece = omega_piece(&ctx, 2).unwrap();
        assert_eq!(piece.ambient_dim(), 16);
        assert_eq!(piece.relation_space().dim(), 3);
        assert_eq!(piece.quotient_dim(), 13);
    }

    #[test]
    fn degree_one_piece_is_free() {
        let ctx = VeroneseContext::new(1, 3);
        let piece = omega_piece(&ctx, 1).unwrap();
        assert_eq!(piece.relation_space().dim(), 0);
        assert_eq!(piece.quotient_dim(), ctx.n() + 1);
    }

    #[test]
    fn conic_contraction_degree_two() {
        let ctx = VeroneseContext::new(1, 2);
        let data = contraction(&ctx, 2).unwrap();
        assert_eq!(data.matrix.rows(), 5);
        assert!(data.matrix.is_surjective());
        assert_eq!(data.n_dim(), 3);
        // consistency of the two routes to dim N
        assert_eq!(
            data.n_dim(),
            data.piece.quotient_dim() - data.matrix.rank()
        );
    }

    #[test]
    fn twisted_cubic_contraction_degree_two() {
        let ctx = VeroneseContext::new(1, 3);
        let data = contraction(&ctx, 2).unwrap();
        assert_eq!(data.matrix.rows(), 7);
        assert_eq!(data.n_dim(), 6);
    }

    #[test]
    fn contraction_degree_one_is_injective_pairing() {
        let ctx = VeroneseContext::new(1, 3);
        let data = contraction(&ctx, 1).unwrap();
        assert_eq!(data.kernel().dim(), 0);
        assert_eq!(data.n_dim(), 0);
    }

    #[test]
    fn torsion_direct_examples() {
        let cubic = VeroneseContext::new(1, 3);
        assert_eq!(
            torsion_direct(&cubic, 2, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            1
        );
        assert_eq!(
            torsion_direct(&cubic, 3, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            0
        );
        let conic = VeroneseContext::new(1, 2);
        assert_eq!(
            torsion_direct(&conic, 2, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            0
        );
    }

    #[test]
    fn saturation_budget_is_honest() {
        let ctx = VeroneseContext::new(1, 3);
        let err = torsion_direct(&ctx, 2, 3, 3).unwrap_err();
        assert!(matches!(err, Error::SaturationInconclusive { .. }));
    }

    #[test]
    fn total_torsion_examples() {
        let cubic = VeroneseContext::new(1, 3);
        assert_eq!(
            total_torsion_direct(&cubic, 1..=4, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            1
        );
        let surface = VeroneseContext::new(2, 2);
        assert_eq!(
            total_torsion_direct(&surface, 1..=4, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            0
        );
        let smooth = VeroneseContext::new(1, 1);
        assert_eq!(
            total_torsion_direct(&smooth, 1..=3, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap(),
            0
        );
    }

    #[test]
    fn three_way_agreement_small() {
        for (r, d) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
            let ctx = VeroneseContext::new(r, d);
            let direct = torsion_direct(&ctx, 2, DEFAULT_WINDOW, DEFAULT_MAX_DEGREE).unwrap();
            let kernel = crate::gaussian::torsion_dim_kernel(&ctx);
            let sequence = crate::sections::torsion_dim_via_sequence(&ctx).unwrap();
            assert_eq!(direct, kernel, "direct vs kernel at r={r} d={d}");
            assert_eq!(kernel, sequence, "kernel vs sequence at r={r} d={d}");
        }
    }
}
