//! Exact computation of torsion and cotorsion in the sheaf of Kähler
//! differentials on affine cones over Veronese embeddings.
//!
//! The cone `X_{r,d}` over the `d`-th Veronese embedding of projective
//! `r`-space is the quotient of affine `(r+1)`-space by the scalar action of
//! `d`-th roots of unity. Its module of Kähler differentials `Ω` fails to be
//! reflexive in two independent ways, both detected by finite exact linear
//! algebra:
//!
//! * **torsion** — the kernel of `Ω → Ω^∨∨`, nonzero exactly when `d ≥ 3`;
//! * **cotorsion** — the cokernel of the same map, nonzero exactly when
//!   `d ≥ 2`.
//!
//! Everything here is computed over the rationals with no floating point.
//! Torsion is obtained along three mutually independent routes that must
//! agree:
//!
//! 1. the cohomological route through section spaces of the ideal sheaf and
//!    its square ([`sections`]),
//! 2. the kernel of the Gaussian map `s ∧ t ↦ s·dt − t·ds` ([`gaussian`]),
//! 3. the direct route from a presentation of the module of differentials on
//!    the cone, with torsion detected by saturation ([`cone`]).
//!
//! Cotorsion and the singularity classification (index, Gorenstein property,
//! discrepancy, terminal/canonical/log-terminal class) come from the cyclic
//! quotient description ([`quotient`]).
//!
//! # Quick start
//!
//! ```
//! use veronese::sections::VeroneseContext;
//! use veronese::gaussian::torsion_dim_kernel;
//! use veronese::quotient::classify;
//!
//! // The cone over the twisted cubic: log terminal, but Ω has torsion.
//! let ctx = VeroneseContext::new(1, 3);
//! assert_eq!(torsion_dim_kernel(&ctx), 1);
//!
//! let report = classify(1, 3);
//! assert!(!report.gorenstein);
//! assert!(report.has_torsion);
//! assert!(report.has_cotorsion);
//! ```

pub mod cone;
pub mod error;
pub mod formulas;
pub mod gaussian;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod sections;

pub use error::Error;

/// Doctest anchors for the guide in `book/src`; every Rust code fence in the
/// book is compiled and run by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(exact_linear_algebra, "../../../book/src/exact-linear-algebra.md");
    chapter!(polynomials, "../../../book/src/polynomials.md");
    chapter!(dimension_formulas, "../../../book/src/dimension-formulas.md");
    chapter!(veronese_sections, "../../../book/src/veronese-sections.md");
    chapter!(gaussian_map, "../../../book/src/gaussian-map.md");
    chapter!(cone_differentials, "../../../book/src/cone-differentials.md");
    chapter!(quotient_classification, "../../../book/src/quotient-classification.md");
    chapter!(cli, "../../../book/src/cli.md");
}
