//! Hom-Lie algebras given by structure constants, their validators, and the basic
//! constructions on them: Yau twists, commutator algebras, ideals, quotients, the
//! multiplicative quotient, abelianisation and the centre.

use crate::error::{Error, Result};
use crate::exactla::{add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Subspace};
use crate::scalar::Field;

/// A finite-dimensional algebra `(L, [-,-], α)`.
///
/// The bracket table stores `[e_i, e_j]` for every ordered pair, so skew-symmetry is a
/// property to check rather than an assumption. Values built by the constructors of this
/// crate are skew by construction unless noted otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLie<F> {
    dim: usize,
    brackets: Vec<Vec<F>>,
    alpha: Matrix<F>,
}

/// Outcome of [`HomLie::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HomLieReport {
    pub skew: bool,
    pub hom_jacobi: bool,
    pub multiplicative: bool,
    pub regular: bool,
}

impl HomLieReport {
    /// Skew, Hom-Jacobi and multiplicative: the standing assumptions everywhere else.
    pub fn is_valid(&self) -> bool {
        self.skew && self.hom_jacobi && self.multiplicative
    }
}

impl<F: Field> HomLie<F> {
    /// `brackets[i * dim + j]` is the coordinate vector of `[e_i, e_j]`.
    pub fn new(dim: usize, alpha: Matrix<F>, brackets: Vec<Vec<F>>) -> Result<Self> {
        if alpha.shape() != (dim, dim) {
            return Err(Error::dims("twist matrix", dim, alpha.rows().max(alpha.cols())));
        }
        if brackets.len() != dim * dim {
            return Err(Error::dims("bracket table", dim * dim, brackets.len()));
        }
        if let Some(bad) = brackets.iter().find(|v| v.len() != dim) {
            return Err(Error::dims("bracket value", dim, bad.len()));
        }
        Ok(HomLie { dim, brackets, alpha })
    }

    pub fn from_fn(dim: usize, alpha: Matrix<F>, mut bracket: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(bracket(i, j));
            }
        }
        Self::new(dim, alpha, table)
    }

    /// Builds the table from the listed brackets, filling `[e_j, e_i] = -[e_i, e_j]`.
    /// Unlisted pairs bracket to zero.
    pub fn from_brackets(dim: usize, alpha: Matrix<F>, listed: &[(usize, usize, Vec<F>)]) -> Result<Self> {
        let mut table = vec![zero_vector(dim); dim * dim];
        for (i, j, v) in listed {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::dims("listed bracket", dim, v.len()));
            }
            table[i * dim + j] = v.clone();
            table[j * dim + i] = v.iter().map(F::neg_ref).collect();
        }
        Self::new(dim, alpha, table)
    }

    pub fn abelian(dim: usize, alpha: Matrix<F>) -> Result<Self> {
        Self::new(dim, alpha, vec![zero_vector(dim); dim * dim])
    }

    pub fn zero() -> Self {
        HomLie {
            dim: 0,
            brackets: Vec::new(),
            alpha: Matrix::zeros(0, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Matrix<F> {
        &self.alpha
    }

    pub fn bracket_table(&self) -> &[Vec<F>] {
        &self.brackets
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F] {
        &self.brackets[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.dim, "bracket argument has wrong length");
        assert_eq!(y.len(), self.dim, "bracket argument has wrong length");
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &xi.mul_ref(yj), self.basis_bracket(i, j));
            }
        }
        out
    }

    pub fn twist(&self, x: &[F]) -> Vec<F> {
        self.alpha.apply(x)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| is_zero_vector(v))
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        Matrix::from_linear_map(self.dim, self.dim, |y| self.bracket(x, y))
    }

    /// Matrix of `x ↦ [x, e_j]` stacked over all `j`; its kernel is `{x : [x, L] = 0}`.
    fn right_brackets_matrix(&self) -> Matrix<F> {
        let n = self.dim;
        Matrix::from_linear_map(n, n * n, |x| {
            (0..n).flat_map(|j| self.bracket(x, &unit_vector(n, j))).collect()
        })
    }

    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| is_zero_vector(&add_vectors(self.basis_bracket(i, j), self.basis_bracket(j, i))))
        })
    }

    /// `[α x, [y, z]] + [α y, [z, x]] + [α z, [x, y]]`
    pub fn hom_jacobiator(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        let a = self.bracket(&self.twist(x), &self.bracket(y, z));
        let b = self.bracket(&self.twist(y), &self.bracket(z, x));
        let c = self.bracket(&self.twist(z), &self.bracket(x, y));
        add_vectors(&add_vectors(&a, &b), &c)
    }

    pub fn satisfies_hom_jacobi(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    is_zero_vector(&self.hom_jacobiator(&unit_vector(n, i), &unit_vector(n, j), &unit_vector(n, k)))
                })
            })
        })
    }

    /// Plain Jacobi identity, i.e. Hom-Jacobi with the twist replaced by the identity.
    pub fn satisfies_jacobi(&self) -> bool {
        let untwisted = HomLie {
            alpha: Matrix::identity(self.dim),
            ..self.clone()
        };
        untwisted.satisfies_hom_jacobi()
    }

    /// `α[x, y] - [α x, α y]`
    pub fn multiplicativity_defect(&self, x: &[F], y: &[F]) -> Vec<F> {
        sub_vectors(
            &self.twist(&self.bracket(x, y)),
            &self.bracket(&self.twist(x), &self.twist(y)),
        )
    }

    pub fn is_multiplicative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| is_zero_vector(&self.multiplicativity_defect(&unit_vector(n, i), &unit_vector(n, j))))
        })
    }

    pub fn validate(&self) -> HomLieReport {
        let skew = self.is_skew();
        let hom_jacobi = self.satisfies_hom_jacobi();
        let multiplicative = self.is_multiplicative();
        let regular = skew && hom_jacobi && multiplicative && self.alpha.is_invertible();
        HomLieReport {
            skew,
            hom_jacobi,
            multiplicative,
            regular,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `α(H) ⊆ H` and `[H, L] ⊆ H`.
    pub fn is_ideal(&self, h: &Subspace<F>) -> bool {
        if h.ambient_dim() != self.dim {
            return false;
        }
        let n = self.dim;
        h.basis().iter().all(|v| {
            h.contains_vector(&self.twist(v)) && (0..n).all(|j| h.contains_vector(&self.bracket(v, &unit_vector(n, j))))
        })
    }

    /// `α(H) ⊆ H` and `[H, H] ⊆ H`.
    pub fn is_subalgebra(&self, h: &Subspace<F>) -> bool {
        if h.ambient_dim() != self.dim {
            return false;
        }
        h.basis().iter().all(|v| {
            h.contains_vector(&self.twist(v)) && h.basis().iter().all(|w| h.contains_vector(&self.bracket(v, w)))
        })
    }

    /// The subalgebra on the canonical basis of `h`, with the restricted twist, together
    /// with its inclusion matrix.
    pub fn restrict(&self, h: &Subspace<F>) -> Result<(HomLie<F>, Matrix<F>)> {
        if !self.is_subalgebra(h) {
            return Err(Error::NotASubalgebra);
        }
        let basis = h.basis();
        let k = basis.len();
        let coords = |v: Vec<F>| h.coordinates(&v).expect("closed under the operations");
        let alpha_cols: Vec<Vec<F>> = basis.iter().map(|v| coords(self.twist(v))).collect();
        let alpha = Matrix::from_columns(k, &alpha_cols)?;
        let sub = HomLie::from_fn(k, alpha, |i, j| coords(self.bracket(&basis[i], &basis[j])))?;
        Ok((sub, h.basis_matrix()))
    }

    /// `L ⊕ L'` with componentwise bracket and block-diagonal twist.
    pub fn direct_sum(&self, other: &HomLie<F>) -> HomLie<F> {
        let (n, m) = (self.dim, other.dim);
        HomLie::from_fn(n + m, self.alpha.block_diag(&other.alpha), |i, j| {
            let mut v = zero_vector(n + m);
            if i < n && j < n {
                v[..n].clone_from_slice(self.basis_bracket(i, j));
            } else if i >= n && j >= n {
                v[n..].clone_from_slice(other.basis_bracket(i - n, j - n));
            }
            v
        })
        .expect("block dimensions agree")
    }

    /// Smallest ideal containing `s`: the fixed point of `U ↦ U + [U, L] + α(U)`.
    pub fn ideal_closure(&self, s: &Subspace<F>) -> Subspace<F> {
        let n = self.dim;
        let mut u = s.clone();
        loop {
            let mut vs: Vec<Vec<F>> = u.basis().to_vec();
            for v in u.basis() {
                vs.push(self.twist(v));
                for j in 0..n {
                    vs.push(self.bracket(v, &unit_vector(n, j)));
                }
            }
            let next = Subspace::from_spanning(n, &vs);
            if next.dim() == u.dim() {
                return u;
            }
            u = next;
        }
    }

    /// `L / I` on the coset representatives given by the non-pivot basis vectors of `I`,
    /// together with the projection matrix.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<(HomLie<F>, Matrix<F>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let reps = ideal.complement_indices();
        let q = reps.len();
        let project = |v: &[F]| -> Vec<F> {
            let r = ideal.reduce(v);
            reps.iter().map(|&c| r[c].clone()).collect()
        };
        let projection = Matrix::from_linear_map(self.dim, q, |v| project(v));
        let n = self.dim;
        let alpha = Matrix::from_linear_map(q, q, |v| {
            let lifted = lift(v, &reps, n);
            project(&self.twist(&lifted))
        });
        let quotient = HomLie::from_fn(q, alpha, |a, b| project(self.basis_bracket(reps[a], reps[b])))?;
        Ok((quotient, projection))
    }

    /// The span of all brackets closed to an ideal, and `L / [L, L]`.
    pub fn commutator_and_abelianisation(&self) -> (Subspace<F>, HomLie<F>, Matrix<F>) {
        let commutator = self.ideal_closure(&Subspace::from_spanning(self.dim, &self.brackets));
        let (ab, projection) = self.quotient(&commutator).expect("closure is an ideal");
        (commutator, ab, projection)
    }

    /// Quotient by the ideal generated by every `α[x, y] - [α x, α y]`.
    pub fn multiplicativize(&self) -> Result<(HomLie<F>, Matrix<F>)> {
        if !self.is_skew() || !self.satisfies_hom_jacobi() {
            return Err(Error::NotHomLie(
                "multiplicativize needs skew-symmetry and Hom-Jacobi".into(),
            ));
        }
        let n = self.dim;
        let mut defects = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                defects.push(self.multiplicativity_defect(&unit_vector(n, i), &unit_vector(n, j)));
            }
        }
        let ideal = self.ideal_closure(&Subspace::from_spanning(n, &defects));
        self.quotient(&ideal)
    }

    /// `Z(L) = {x : [αⁿ x, y] = 0 for all y and n ≥ 0}`, computed as the stable value of
    /// `V_{k+1} = V_0 ∩ α^{-1}(V_k)`.
    pub fn centre(&self) -> Subspace<F> {
        let v0 = self.right_brackets_matrix().kernel();
        let mut v = v0.clone();
        loop {
            let next = v0.intersection(&v.preimage_under(&self.alpha)).expect("same ambient");
            if next == v {
                return v;
            }
            v = next;
        }
    }
}

pub(crate) fn lift<F: Field>(coords: &[F], reps: &[usize], ambient: usize) -> Vec<F> {
    let mut out = zero_vector(ambient);
    for (c, &r) in coords.iter().zip(reps) {
        out[r] = c.clone();
    }
    out
}

/// Which of the two morphism conditions a linear map satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub preserves_bracket: bool,
    pub intertwines_alpha: bool,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.preserves_bracket && self.intertwines_alpha
    }
}

/// Checks `f[x, y] = [f x, f y]` and `f ∘ α = α' ∘ f` on basis elements.
pub fn morphism_report<F: Field>(f: &Matrix<F>, source: &HomLie<F>, target: &HomLie<F>) -> Result<MorphismReport> {
    if f.shape() != (target.dim(), source.dim()) {
        return Err(Error::dims(
            "morphism matrix",
            target.dim() * source.dim(),
            f.rows() * f.cols(),
        ));
    }
    let n = source.dim();
    let cols = f.columns();
    let preserves_bracket =
        (0..n).all(|i| (0..n).all(|j| f.apply(source.basis_bracket(i, j)) == target.bracket(&cols[i], &cols[j])));
    let intertwines_alpha = f.mul(source.alpha()) == target.alpha().mul(f);
    Ok(MorphismReport {
        preserves_bracket,
        intertwines_alpha,
    })
}

pub fn is_hom_morphism<F: Field>(f: &Matrix<F>, source: &HomLie<F>, target: &HomLie<F>) -> Result<bool> {
    Ok(morphism_report(f, source, target)?.holds())
}

/// `(g, [-,-]_s, s)` with `[x, y]_s = s[x, y]`, for a Lie algebra `g` and a Lie algebra
/// endomorphism `s`. The twist of `g` itself is ignored.
pub fn yau_twist<F: Field>(g: &HomLie<F>, s: &Matrix<F>) -> Result<HomLie<F>> {
    let n = g.dim();
    if s.shape() != (n, n) {
        return Err(Error::dims("twisting map", n, s.rows()));
    }
    if !g.is_skew() || !g.satisfies_jacobi() {
        return Err(Error::NotALieAlgebra("input bracket is not a Lie bracket".into()));
    }
    let untwisted = HomLie {
        alpha: Matrix::identity(n),
        ..g.clone()
    };
    if !morphism_report(s, &untwisted, &untwisted)?.preserves_bracket {
        return Err(Error::NotAnEndomorphism("s does not preserve the bracket".into()));
    }
    HomLie::from_fn(n, s.clone(), |i, j| s.apply(g.basis_bracket(i, j)))
}

/// A Hom-associative algebra `(A, μ, α)`, the input of the commutator construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAssociative<F> {
    dim: usize,
    products: Vec<Vec<F>>,
    alpha: Matrix<F>,
}

impl<F: Field> HomAssociative<F> {
    /// `products[i * dim + j]` is `μ(e_i, e_j)`.
    pub fn new(dim: usize, alpha: Matrix<F>, products: Vec<Vec<F>>) -> Result<Self> {
        if alpha.shape() != (dim, dim) {
            return Err(Error::dims("twist matrix", dim, alpha.rows()));
        }
        if products.len() != dim * dim || products.iter().any(|v| v.len() != dim) {
            return Err(Error::dims("product table", dim * dim, products.len()));
        }
        Ok(HomAssociative { dim, products, alpha })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                axpy(&mut out, &xi.mul_ref(yj), &self.products[i * self.dim + j]);
            }
        }
        out
    }

    pub fn preserves_product(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (unit_vector(n, i), unit_vector(n, j));
                self.alpha.apply(&self.product(&x, &y)) == self.product(&self.alpha.apply(&x), &self.alpha.apply(&y))
            })
        })
    }

    /// `μ(α x, μ(y, z)) = μ(μ(x, y), α z)`
    pub fn is_hom_associative(&self) -> bool {
        let n = self.dim;
        let e = |i| unit_vector::<F>(n, i);
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let lhs = self.product(&self.alpha.apply(&e(i)), &self.product(&e(j), &e(k)));
                    let rhs = self.product(&self.product(&e(i), &e(j)), &self.alpha.apply(&e(k)));
                    lhs == rhs
                })
            })
        })
    }

    /// The bracket `μ(x, y) - μ(y, x)` with the same twist.
    pub fn commutator_hom_lie(&self) -> Result<HomLie<F>> {
        if !self.preserves_product() {
            return Err(Error::AlphaDoesNotPreserveProduct);
        }
        if !self.is_hom_associative() {
            return Err(Error::NotHomAssociative);
        }
        let n = self.dim;
        HomLie::from_fn(n, self.alpha.clone(), |i, j| {
            sub_vectors(&self.products[i * n + j], &self.products[j * n + i])
        })
    }
}
