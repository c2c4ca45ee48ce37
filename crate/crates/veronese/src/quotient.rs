//! The quotient-side view: the Veronese cone as the quotient of affine
//! `(r+1)`-space by the scalar action of `d`-th roots of unity.
//!
//! From this description everything about the singularity class follows by
//! arithmetic: the index is the denominator of `(r+1)/d`, the cone is
//! Gorenstein exactly when `d` divides `r+1`, and the discrepancy of the
//! exceptional divisor of the blow-up of the vertex is `a = (r+1)/d - 1`,
//! giving the terminal/canonical/log-terminal trichotomy by the sign of `a`.
//!
//! Cotorsion is decided by counting: the invariant differentials form a
//! module whose minimal generators are the `monomial·dx_i` with the monomial
//! of degree `d-1`, which is `(r+1)·C(d+r-1, d-1)` generators against an
//! embedding dimension of `C(d+r, d)`. Any excess forces the natural map to
//! the reflexive hull to miss generators, hence cotorsion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::formulas;
use crate::linalg::ExactMatrix;
use crate::poly::{monomial_basis, Monomial};

/// Singularity class in the sense of the minimal model program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MmpClass {
    Smooth,
    Terminal,
    CanonicalNotTerminal,
    LogTerminalNotCanonical,
}

impl MmpClass {
    /// Short label used in the text table: `smooth`, `terminal`,
    /// `canonical`, `log terminal`.
    pub fn label(&self) -> &'static str {
        match self {
            MmpClass::Smooth => "smooth",
            MmpClass::Terminal => "terminal",
            MmpClass::CanonicalNotTerminal => "canonical",
            MmpClass::LogTerminalNotCanonical => "log terminal",
        }
    }
}

/// Everything the classification knows about one Veronese cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub r: u32,
    pub d: u32,
    /// Dimension of the cone, `r + 1`.
    pub dim: u32,
    /// Embedding dimension `C(r+d, d)`, as a decimal string in JSON.
    #[serde(serialize_with = "bigint_as_string")]
    pub embdim: BigInt,
    /// Smallest positive multiple of the canonical class that is Cartier.
    pub index: u32,
    pub gorenstein: bool,
    /// Discrepancy `a = (r+1)/d - 1` of the exceptional divisor, exact;
    /// rendered as `p/q` in JSON.
    #[serde(serialize_with = "rational_as_string")]
    pub discrepancy: BigRational,
    pub mmp_class: MmpClass,
    pub has_torsion: bool,
    /// Filled only when the kernel computation was requested.
    pub torsion_dim: Option<usize>,
    pub has_cotorsion: bool,
    #[serde(serialize_with = "bigint_as_string")]
    pub cotorsion_excess: BigInt,
}

fn bigint_as_string<S: Serializer>(b: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

fn rational_as_string<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl SingularityReport {
    /// `X_{r,d}` name used in tables.
    pub fn name(&self) -> String {
        format!("X_{{{},{}}}", self.r, self.d)
    }
}

/// Classify the cone `X_{r,d}` by pure arithmetic. The torsion dimension is
/// left unset; callers wanting the exact value fill it in from one of the
/// torsion routes.
pub fn classify(r: u32, d: u32) -> SingularityReport {
    assert!(r >= 1 && d >= 1);
    let g = num_integer::gcd(r + 1, d);
    let index = d / g;
    let gorenstein = (r + 1) % d == 0;
    let discrepancy = BigRational::new(BigInt::from(r + 1) - BigInt::from(d), BigInt::from(d));
    let mmp_class = if d == 1 {
        MmpClass::Smooth
    } else if r + 1 > d {
        MmpClass::Terminal
    } else if r + 1 == d {
        MmpClass::CanonicalNotTerminal
    } else {
        MmpClass::LogTerminalNotCanonical
    };
    SingularityReport {
        r,
        d,
        dim: r + 1,
        embdim: formulas::embedding_dim(r, d),
        index,
        gorenstein,
        discrepancy,
        mmp_class,
        has_torsion: d >= 3,
        torsion_dim: None,
        has_cotorsion: d >= 2,
        cotorsion_excess: formulas::cotorsion_excess(r, d),
    }
}

/// The minimal homogeneous generators of the invariant differentials: all
/// products `monomial·dx_i` with the monomial of degree `d-1`.
#[derive(Debug, Clone)]
pub struct InvariantGenerators {
    generators: Vec<(Monomial, usize)>,
    count: BigInt,
}

impl InvariantGenerators {
    pub fn generators(&self) -> &[(Monomial, usize)] {
        &self.generators
    }

    pub fn count(&self) -> &BigInt {
        &self.count
    }
}

/// Enumerate the invariant generators and certify their minimality.
///
/// Minimality needs two facts, both checked here rather than assumed: the
/// generators are linearly independent in the bottom graded piece of the
/// invariant module, and multiples by the maximal ideal of the invariant
/// ring only start in strictly higher degree, so nothing in the bottom
/// piece is redundant.
pub fn invariant_generators(r: u32, d: u32) -> InvariantGenerators {
    assert!(r >= 1 && d >= 1);
    let nx = r as usize + 1;
    let coeff_basis = monomial_basis(nx, d - 1);
    let mut generators = Vec::with_capacity(nx * coeff_basis.len());
    for i in 0..nx {
        for mu in &coeff_basis {
            // invariance under the scalar action: total weight divisible by d
            assert_eq!((mu.degree() + 1) % d, 0, "generator is not invariant");
            generators.push((mu.clone(), i));
        }
    }
    let count = BigInt::from(generators.len());
    assert_eq!(
        count,
        BigInt::from(r + 1) * formulas::binom(i64::from(d) + i64::from(r) - 1, i64::from(d) - 1),
        "generator count disagrees with the closed form"
    );

    // independence in the bottom graded piece
    let mut rows = Vec::with_capacity(generators.len());
    for (mu, i) in &generators {
        let mut row = vec![BigRational::zero(); nx * coeff_basis.len()];
        let c = coeff_basis.binary_search(mu).expect("generator monomial in basis");
        row[i * coeff_basis.len() + c] = BigRational::from_integer(1.into());
        rows.push(row);
    }
    assert_eq!(
        ExactMatrix::from_rows(rows).rank(),
        generators.len(),
        "generators are not independent in the bottom degree"
    );

    // the invariant ring is generated in degree d, so maximal-ideal
    // multiples live in degree >= (d-1) + d, strictly above the bottom piece
    let bottom = d - 1;
    let lowest_multiple = bottom + d;
    assert!(lowest_multiple > bottom);

    InvariantGenerators { generators, count }
}

/// Decide cotorsion by comparing the number of invariant generators with
/// the embedding dimension. Returns the decision and the excess; the excess
/// is asserted against the closed form.
pub fn cotorsion_decision(r: u32, d: u32) -> (bool, BigInt) {
    let gens = invariant_generators(r, d);
    let excess = gens.count() - formulas::embedding_dim(r, d);
    assert_eq!(
        excess,
        formulas::cotorsion_excess(r, d),
        "generator count minus embedding dimension disagrees with the closed form"
    );
    (excess.is_positive(), excess)
}

/// Render reports as the fixed-column text table: singularity, dim, type,
/// Gorenstein, torsion, cotorsion.
pub fn render_table(reports: &[SingularityReport]) -> String {
    let header = [
        "singularity",
        "dim",
        "type",
        "Gorenstein",
        "torsion",
        "cotorsion",
    ];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|rep| {
            [
                rep.name(),
                rep.dim.to_string(),
                rep.mmp_class.label().to_string(),
                yesno(rep.gorenstein),
                yesno(rep.has_torsion),
                yesno(rep.has_cotorsion),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let format_row = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&format_row(&header.map(String::from)));
    out.push('\n');
    for row in &rows {
        out.push_str(&format_row(row));
        out.push('\n');
    }
    out
}

fn yesno(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Serialize a list of wedge witnesses as `[{pair: [a, b], coeff: "p/q"}]`.
pub fn witness_json(witness: &crate::gaussian::Lambda2Element) -> impl Serialize + '_ {
    struct W<'a>(&'a crate::gaussian::Lambda2Element);
    impl Serialize for W<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            #[derive(Serialize)]
            struct Term {
                pair: [usize; 2],
                coeff: String,
            }
            let mut seq = s.serialize_seq(None)?;
            for (&(a, b), c) in self.0.coefficients() {
                seq.serialize_element(&Term {
                    pair: [a, b],
                    coeff: c.to_string(),
                })?;
            }
            seq.end()
        }
    }
    W(witness)
}
