//! Monomials and sparse polynomials over the rationals in a fixed number of
//! variables.
//!
//! # Monomial order
//!
//! One total order is used repository-wide: graded first, then
//! lexicographic-descending on exponent vectors. For two variables the
//! degree-3 basis therefore reads `x0^3, x0^2*x1, x0*x1^2, x1^3`. Every
//! matrix row and column labeling downstream depends on this order, so
//! [`monomial_basis`] and the `Ord` on [`Monomial`] agree by construction.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial in `num_vars` variables.
    pub fn constant(num_vars: usize) -> Self {
        Monomial {
            exponents: vec![0; num_vars],
        }
    }

    /// The monomial `x_i`.
    pub fn variable(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut exponents = vec![0; num_vars];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Deterministic plain-text rendering with the given variable prefix.
    pub fn render_with(&self, prefix: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{prefix}{i}")),
                _ => parts.push(format!("{prefix}{i}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in the fixed order. The count is the
/// stars-and-bars binomial `C(degree + num_vars - 1, num_vars - 1)`.
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Monomial> {
    assert!(num_vars >= 1);
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fill(&mut out, &mut current, 0, degree);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    // descending leading exponent gives the lex-descending order
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Sparse polynomial: monomial → nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::from_monomial(Monomial::constant(num_vars))
    }

    pub fn variable(num_vars: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::variable(num_vars, i))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_term(m, BigRational::one())
    }

    pub fn from_term(m: Monomial, c: BigRational) -> Self {
        let num_vars = m.num_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Exact product; degrees add for homogeneous inputs.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.num_vars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.num_vars, "variable index out of range");
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Substitute `images[j]` for variable `j`. A length mismatch is an
    /// error; for homogeneous `f` of degree `m` and images of common degree
    /// `d` the result is homogeneous of degree `m·d`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(
            images.len(),
            self.num_vars,
            "substitute: expected {} images, got {}",
            self.num_vars,
            images.len()
        );
        let target_vars = images
            .first()
            .map_or(self.num_vars, Polynomial::num_vars);
        let mut out = Polynomial::zero(target_vars);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::one(target_vars);
            for (j, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[j].pow(e));
                }
            }
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Coefficient vector with respect to an ordered monomial basis.
    /// Every term of `self` must appear in the basis.
    pub fn coeff_vector(&self, basis: &[Monomial]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis
                .binary_search(m)
                .unwrap_or_else(|_| panic!("monomial {} not in basis", m.render_with("x")));
            v[i] = c.clone();
        }
        v
    }

    /// Deterministic plain-text rendering with the given variable prefix.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render_with(prefix);
            if abs.is_one() {
                if mono == "1" {
                    out.push('1');
                } else {
                    out.push_str(&mono);
                }
            } else if mono == "1" {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Check the Euler identity `Σ x_i ∂f/∂x_i = e·f` for a homogeneous `f` of
/// degree `e`. Panics on non-homogeneous input.
pub fn euler_check(f: &Polynomial, e: u32) -> bool {
    assert!(f.is_homogeneous(), "euler_check requires homogeneous input");
    let mut lhs = Polynomial::zero(f.num_vars());
    for i in 0..f.num_vars() {
        lhs = lhs.add(&f.partial_derivative(i).mul(&Polynomial::variable(f.num_vars(), i)));
    }
    lhs == f.scale(&BigRational::from_integer(e.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn basis_two_vars_degree_three() {
        let b = monomial_basis(2, 3);
        assert_eq!(
            b,
            vec![m(&[3, 0]), m(&[2, 1]), m(&[1, 2]), m(&[0, 3])]
        );
    }

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(3, 1).len(), 3);
        // C(4, 2) = 6
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(1, 7).len(), 1);
        assert_eq!(monomial_basis(4, 0).len(), 1);
    }

    #[test]
    fn product_of_conjugates() {
        // (x + y)(x - y) = x^2 - y^2
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let prod = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let f = Polynomial::from_monomial(m(&[2, 1])).add(&Polynomial::variable(2, 1));
        assert_eq!(f.mul(&Polynomial::one(2)), f);
    }

    #[test]
    fn monomial_times_monomial() {
        let f = Polynomial::from_monomial(m(&[2, 1]));
        let g = Polynomial::from_monomial(m(&[1, 2]));
        assert_eq!(f.mul(&g), Polynomial::from_monomial(m(&[3, 3])));
    }

    #[test]
    fn derivative_examples() {
        let f = Polynomial::from_monomial(m(&[2, 1]));
        let grad = f.partial_derivative(0);
        assert_eq!(
            grad,
            Polynomial::from_term(m(&[1, 1]), BigRational::from_integer(2.into()))
        );

        let g = Polynomial::from_monomial(m(&[3, 0]));
        assert!(g.partial_derivative(1).is_zero());

        // d/dx (x^3 - 3xy^2) = 3x^2 - 3y^2
        let h = Polynomial::from_monomial(m(&[3, 0])).sub(
            &Polynomial::from_term(m(&[1, 2]), BigRational::from_integer(3.into())),
        );
        let expected = Polynomial::from_term(m(&[2, 0]), BigRational::from_integer(3.into())).sub(
            &Polynomial::from_term(m(&[0, 2]), BigRational::from_integer(3.into())),
        );
        assert_eq!(h.partial_derivative(0), expected);
    }

    #[test]
    fn substitute_conic_relation() {
        // t = (x^2, xy, y^2): y0*y2 - y1^2 pulls back to zero
        let images = vec![
            Polynomial::from_monomial(m(&[2, 0])),
            Polynomial::from_monomial(m(&[1, 1])),
            Polynomial::from_monomial(m(&[0, 2])),
        ];
        let f = Polynomial::from_monomial(m(&[1, 0, 1]))
            .sub(&Polynomial::from_monomial(m(&[0, 2, 0])));
        assert!(f.substitute(&images).is_zero());
    }

    #[test]
    fn substitute_single_variable() {
        let images = vec![
            Polynomial::from_monomial(m(&[2, 0])),
            Polynomial::from_monomial(m(&[1, 1])),
            Polynomial::from_monomial(m(&[0, 2])),
        ];
        let y0 = Polynomial::variable(3, 0);
        assert_eq!(y0.substitute(&images), images[0]);
    }

    #[test]
    fn substitute_twisted_cubic_quadric() {
        // t = (x^3, x^2 y, x y^2, y^3): y0*y3 - y1*y2 pulls back to zero
        let images: Vec<_> = monomial_basis(2, 3)
            .into_iter()
            .map(Polynomial::from_monomial)
            .collect();
        let f = Polynomial::from_monomial(m(&[1, 0, 0, 1]))
            .sub(&Polynomial::from_monomial(m(&[0, 1, 1, 0])));
        assert!(f.substitute(&images).is_zero());
    }

    #[test]
    #[should_panic(expected = "substitute: expected")]
    fn substitute_length_mismatch_panics() {
        let f = Polynomial::variable(3, 0);
        let _ = f.substitute(&[Polynomial::variable(2, 0)]);
    }

    #[test]
    fn euler_examples() {
        let f = Polynomial::from_monomial(m(&[3]));
        assert!(euler_check(&f, 3));

        let g = Polynomial::from_monomial(m(&[2, 2]));
        assert!(euler_check(&g, 4));

        assert!(euler_check(&Polynomial::zero(2), 5));
    }

    #[test]
    #[should_panic(expected = "homogeneous")]
    fn euler_check_rejects_inhomogeneous() {
        let f = Polynomial::variable(2, 0).add(&Polynomial::one(2));
        let _ = euler_check(&f, 1);
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = Polynomial::from_monomial(m(&[3, 0])).sub(
            &Polynomial::from_term(m(&[1, 2]), BigRational::from_integer(3.into())),
        );
        assert_eq!(f.render("x"), "x0^3 - 3*x0*x1^2");
        assert_eq!(Polynomial::zero(2).render("x"), "0");
        let half = Polynomial::from_term(m(&[1, 1]), BigRational::new(1.into(), 2.into()));
        assert_eq!(half.render("y"), "1/2*y0*y1");
    }
}
