//! Section spaces on the ambient side of the Veronese embedding.
//!
//! Fix `r ≥ 1` and `d ≥ 1` and let `t_0, …, t_n` be the degree-`d` monomials
//! in `x_0, …, x_r`, listed in the fixed monomial order, so `n+1 = C(r+d,d)`.
//! Degree-`m` forms in the coordinates `y_0, …, y_n` of the target space map
//! to degree-`md` forms in `x` by `y_j ↦ t_j`; the kernel of this
//! substitution in degree `m` is the piece `I_m` of the homogeneous ideal of
//! the Veronese variety.
//!
//! Everything this module computes is the kernel of an explicit matrix over
//! the rationals:
//!
//! * [`ideal_piece`] — forms vanishing on the variety;
//! * [`h0_ideal_squared`] — forms vanishing to second order (the form and
//!   all its first partials pull back to zero);
//! * [`h0_conormal`] — tuples `(f_0, …, f_n)` with `Σ f_j t_j = 0` and
//!   `Σ f_j ∂t_j/∂x_i = 0` for every `i`, the section model of the twisted
//!   conormal sheaf;
//! * [`h1_ideal_squared`] — the alternating sum
//!   `h⁰(conormal) - h⁰(ideal) + h⁰(ideal²)` coming from the four-term
//!   sequence that relates the three, valid because the multiplication map
//!   `Sym^m(S_d) → S_{md}` is (checked to be) surjective.
//!
//! The torsion of the differentials on the cone, in its cohomological
//! incarnation, is [`torsion_dim_via_sequence`] — the `m = 2` value of the
//! alternating sum.

use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::formulas;
use crate::linalg::{ExactMatrix, Subspace};
use crate::poly::{monomial_basis, Monomial, Polynomial};

/// The pair `(r, d)` with the ordered monomial basis of degree-`d` forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseContext {
    r: usize,
    d: u32,
    t_basis: Vec<Monomial>,
    t_polys: Vec<Polynomial>,
}

impl VeroneseContext {
    pub fn new(r: usize, d: u32) -> Self {
        assert!(r >= 1, "require r >= 1");
        assert!(d >= 1, "require d >= 1");
        let t_basis = monomial_basis(r + 1, d);
        assert_eq!(
            num_bigint::BigInt::from(t_basis.len()),
            formulas::embedding_dim(r as u32, d),
            "t_basis size disagrees with C(r+d,d)"
        );
        let t_polys = t_basis.iter().cloned().map(Polynomial::from_monomial).collect();
        VeroneseContext {
            r,
            d,
            t_basis,
            t_polys,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Dimension of the ambient projective space: `n = C(r+d,d) - 1`.
    pub fn n(&self) -> usize {
        self.t_basis.len() - 1
    }

    /// Number of cone coordinates, `n + 1`.
    pub fn num_y_vars(&self) -> usize {
        self.t_basis.len()
    }

    /// Number of variables of the embedded space, `r + 1`.
    pub fn num_x_vars(&self) -> usize {
        self.r + 1
    }

    pub fn t_basis(&self) -> &[Monomial] {
        &self.t_basis
    }

    /// The basis monomials as polynomials, i.e. the substitution images of
    /// the `y_j`.
    pub fn t_polys(&self) -> &[Polynomial] {
        &self.t_polys
    }

    /// Monomial basis of the degree-`e` piece of the `x`-side ring.
    pub fn x_basis(&self, e: u32) -> Vec<Monomial> {
        monomial_basis(self.num_x_vars(), e)
    }

    /// Monomial basis of the degree-`m` piece of the `y`-side ring.
    pub fn y_basis(&self, m: u32) -> Vec<Monomial> {
        monomial_basis(self.num_y_vars(), m)
    }
}

/// Which section space a [`SectionSpace`] models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    /// Degree-`m` forms in `y` vanishing on the variety.
    Ideal,
    /// Degree-`m` forms vanishing to second order along the variety.
    IdealSquared,
    /// Tuples `(f_j)` in the conormal model, ambient `(n+1)·dim S_{(m-1)d}`.
    Conormal,
}

/// One computed section space together with its coordinate model.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    pub context: VeroneseContext,
    pub twist: u32,
    pub kind: SectionKind,
    pub space: Subspace,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Matrix of the multiplication map `Sym^m(S_d) → S_{md}` on monomial bases:
/// the column of a degree-`m` monomial in `y` is the single product monomial
/// `Π t_j^{α_j}`. Surjectivity of this map for every `m ≥ 1` is projective
/// normality of the Veronese embedding.
pub fn multiplication_matrix(ctx: &VeroneseContext, m: u32) -> ExactMatrix {
    assert!(m >= 1);
    let y_basis = ctx.y_basis(m);
    let x_basis = ctx.x_basis(m * ctx.d);
    let mut a = ExactMatrix::zeros(x_basis.len(), y_basis.len());
    for (col, alpha) in y_basis.iter().enumerate() {
        let prod = product_monomial(ctx, alpha);
        let row = x_basis.binary_search(&prod).expect("product monomial in basis");
        a.set(row, col, BigRational::one());
    }
    a
}

/// The single monomial `Π t_j^{α_j}` for a `y`-monomial `α`.
pub(crate) fn product_monomial(ctx: &VeroneseContext, alpha: &Monomial) -> Monomial {
    let mut exps = vec![0u32; ctx.num_x_vars()];
    for (j, &e) in alpha.exponents().iter().enumerate() {
        if e > 0 {
            for (acc, &t) in exps.iter_mut().zip(ctx.t_basis[j].exponents()) {
                *acc += e * t;
            }
        }
    }
    Monomial::new(exps)
}

/// The degree-`m` piece of the ideal of the Veronese variety, as the kernel
/// of the multiplication matrix. Its dimension is `h0_ideal(r, d, m)`.
pub fn ideal_piece(ctx: &VeroneseContext, m: u32) -> SectionSpace {
    let labels = ctx.y_basis(m).iter().map(|mono| mono.render_with("y")).collect();
    let space = multiplication_matrix(ctx, m).kernel_basis().with_labels(labels);
    SectionSpace {
        context: ctx.clone(),
        twist: m,
        kind: SectionKind::Ideal,
        space,
    }
}

/// Explicit binomial generators `y_a y_b - y_c y_d` of the ideal, one for
/// each coincidence `t_a t_b = t_c t_d` of product monomials.
///
/// Two runtime checks guard every downstream use of these generators as a
/// presentation of the ideal: their span must be all of `I_2`, and the span
/// of their degree-1 multiples must be all of `I_3`. Failure of either check
/// aborts with [`Error::GenerationCheck`] rather than silently producing a
/// wrong presentation of the differentials.
pub fn quadric_relations(ctx: &VeroneseContext) -> Result<Vec<Polynomial>, Error> {
    let nv = ctx.num_y_vars();
    // group the pairs a <= b by their product monomial
    let mut fibers: std::collections::BTreeMap<Vec<u32>, Vec<Monomial>> =
        std::collections::BTreeMap::new();
    for a in 0..nv {
        for b in a..nv {
            let mut exps = vec![0u32; nv];
            exps[a] += 1;
            exps[b] += 1;
            let pair = Monomial::new(exps);
            let prod = product_monomial(ctx, &pair);
            fibers.entry(prod.exponents().to_vec()).or_default().push(pair);
        }
    }
    let mut quadrics = Vec::new();
    for group in fibers.values() {
        for other in &group[1..] {
            let q = Polynomial::from_monomial(group[0].clone())
                .sub(&Polynomial::from_monomial(other.clone()));
            quadrics.push(q);
        }
    }

    // membership: every binomial really lies in the ideal
    for q in &quadrics {
        assert!(
            q.substitute(ctx.t_polys()).is_zero(),
            "quadric relation does not vanish on the Veronese variety"
        );
    }

    // degree-2 span check
    let expected2 = big_to_usize(&formulas::h0_ideal(ctx.r as u32, ctx.d, 2));
    let y2 = ctx.y_basis(2);
    let span2 = if quadrics.is_empty() {
        0
    } else {
        ExactMatrix::from_rows(quadrics.iter().map(|q| q.coeff_vector(&y2)).collect()).rank()
    };
    if span2 != expected2 {
        return Err(Error::GenerationCheck {
            check: "span of quadric generators in degree 2",
            found: span2,
            expected: expected2,
        });
    }

    // degree-3 generation check: linear multiples of the quadrics span I_3
    let expected3 = big_to_usize(&formulas::h0_ideal(ctx.r as u32, ctx.d, 3));
    let y3 = ctx.y_basis(3);
    let mut multiples = Vec::new();
    for q in &quadrics {
        for j in 0..nv {
            let qj = q.mul(&Polynomial::variable(nv, j));
            multiples.push(qj.coeff_vector(&y3));
        }
    }
    let span3 = if multiples.is_empty() {
        0
    } else {
        ExactMatrix::from_rows(multiples).rank()
    };
    if span3 != expected3 {
        return Err(Error::GenerationCheck {
            check: "span of degree-1 multiples of the quadrics in degree 3",
            found: span3,
            expected: expected3,
        });
    }

    Ok(quadrics)
}

/// Stacked matrix whose kernel is the space of degree-`m` forms vanishing to
/// second order along the variety: the form and each partial `∂/∂y_j` pull
/// back to zero.
fn ideal_squared_matrix(ctx: &VeroneseContext, m: u32) -> ExactMatrix {
    assert!(m >= 1);
    let y_mono = ctx.y_basis(m);
    let x_top = ctx.x_basis(m * ctx.d);
    let x_der = ctx.x_basis((m - 1) * ctx.d);
    let nv = ctx.num_y_vars();
    let rows = x_top.len() + nv * x_der.len();
    let mut a = ExactMatrix::zeros(rows, y_mono.len());
    for (col, alpha) in y_mono.iter().enumerate() {
        // value block
        let prod = product_monomial(ctx, alpha);
        let row = x_top.binary_search(&prod).expect("product in basis");
        a.set(row, col, BigRational::one());
        // derivative blocks: ∂α/∂y_j then substitute, one monomial each
        for (j, &e) in alpha.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut rest = alpha.exponents().to_vec();
            rest[j] -= 1;
            let sub = product_monomial(ctx, &Monomial::new(rest));
            let row = x_top.len()
                + j * x_der.len()
                + x_der.binary_search(&sub).expect("derivative image in basis");
            a.set(row, col, BigRational::from_integer(e.into()));
        }
    }
    a
}

/// Dimension of the space of degree-`m` forms vanishing to second order
/// along the variety, `h⁰(I²(mH))`.
pub fn h0_ideal_squared(ctx: &VeroneseContext, m: u32) -> usize {
    let a = ideal_squared_matrix(ctx, m);
    a.cols() - a.rank()
}

/// Full kernel variant of [`h0_ideal_squared`], for inspection and tests.
pub fn ideal_squared_space(ctx: &VeroneseContext, m: u32) -> SectionSpace {
    let labels = ctx.y_basis(m).iter().map(|mono| mono.render_with("y")).collect();
    let space = ideal_squared_matrix(ctx, m).kernel_basis().with_labels(labels);
    SectionSpace {
        context: ctx.clone(),
        twist: m,
        kind: SectionKind::IdealSquared,
        space,
    }
}

/// Ambient labels of the conormal coordinate model: coefficient `f_j` runs
/// over the monomials of `S_{(m-1)d}`, tuple slot `j` over the `dy_j`.
pub fn conormal_labels(ctx: &VeroneseContext, m: u32) -> Vec<String> {
    let x_coeff = ctx.x_basis((m - 1) * ctx.d);
    let mut labels = Vec::with_capacity(ctx.num_y_vars() * x_coeff.len());
    for j in 0..ctx.num_y_vars() {
        for mono in &x_coeff {
            labels.push(format!("{}*dy{}", mono.render_with("x"), j));
        }
    }
    labels
}

/// Stacked matrix whose kernel is the conormal section space
/// `{(f_j) : Σ f_j t_j = 0, Σ f_j ∂t_j/∂x_i = 0 for all i}` with
/// `f_j ∈ S_{(m-1)d}`.
fn conormal_matrix(ctx: &VeroneseContext, m: u32) -> ExactMatrix {
    assert!(m >= 1);
    let x_coeff = ctx.x_basis((m - 1) * ctx.d);
    let x_top = ctx.x_basis(m * ctx.d);
    let x_der = ctx.x_basis(m * ctx.d - 1);
    let nx = ctx.num_x_vars();
    let cols = ctx.num_y_vars() * x_coeff.len();
    let rows = x_top.len() + nx * x_der.len();
    let mut a = ExactMatrix::zeros(rows, cols);
    for j in 0..ctx.num_y_vars() {
        let tj = &ctx.t_basis[j];
        for (c, mu) in x_coeff.iter().enumerate() {
            let col = j * x_coeff.len() + c;
            // Σ f_j t_j = 0 block
            let prod = mu.mul(tj);
            let row = x_top.binary_search(&prod).expect("product in basis");
            a.set(row, col, BigRational::one());
            // Σ f_j ∂t_j/∂x_i = 0 blocks
            for i in 0..nx {
                let e = tj.exponents()[i];
                if e == 0 {
                    continue;
                }
                let mut exps = prod.exponents().to_vec();
                exps[i] -= 1;
                let row = x_top.len()
                    + i * x_der.len()
                    + x_der
                        .binary_search(&Monomial::new(exps))
                        .expect("derivative in basis");
                a.set(row, col, BigRational::from_integer(e.into()));
            }
        }
    }
    a
}

/// Dimension of the twisted conormal section space `h⁰(I/I²(mH))` in the
/// stacked-kernel coordinate model.
pub fn h0_conormal(ctx: &VeroneseContext, m: u32) -> usize {
    let a = conormal_matrix(ctx, m);
    a.cols() - a.rank()
}

/// Full kernel variant of [`h0_conormal`], for inspection and tests.
pub fn conormal_space(ctx: &VeroneseContext, m: u32) -> SectionSpace {
    let space = conormal_matrix(ctx, m)
        .kernel_basis()
        .with_labels(conormal_labels(ctx, m));
    SectionSpace {
        context: ctx.clone(),
        twist: m,
        kind: SectionKind::Conormal,
        space,
    }
}

/// `h¹(I²(mH))` from the four-term sequence:
/// `h⁰(conormal) - h⁰(ideal) + h⁰(ideal²)`.
///
/// The sequence is exact only when `h¹(I(mH)) = 0`, which for the Veronese
/// embedding is surjectivity of the degree-`m` multiplication map; that
/// surjectivity is checked here, not assumed. A negative alternating sum is
/// mathematically impossible and reported as a hard error.
pub fn h1_ideal_squared(ctx: &VeroneseContext, m: u32) -> Result<usize, Error> {
    assert!(m >= 1);
    assert!(
        multiplication_matrix(ctx, m).is_surjective(),
        "multiplication map unexpectedly not surjective at twist {m}"
    );
    let conormal = h0_conormal(ctx, m) as i64;
    let ideal = big_to_usize(&formulas::h0_ideal(ctx.r as u32, ctx.d, m)) as i64;
    let squared = h0_ideal_squared(ctx, m) as i64;
    let h1 = conormal - ideal + squared;
    if h1 < 0 {
        return Err(Error::NegativeH1 { m: m as usize, value: h1 });
    }
    Ok(h1 as usize)
}

/// Torsion dimension of the differentials on the cone, computed along the
/// cohomological route: `h¹(I²(2H))`.
pub fn torsion_dim_via_sequence(ctx: &VeroneseContext) -> Result<usize, Error> {
    h1_ideal_squared(ctx, 2)
}

pub(crate) fn big_to_usize(b: &num_bigint::BigInt) -> usize {
    use num_traits::ToPrimitive;
    b.to_usize().expect("dimension does not fit in usize")
}
