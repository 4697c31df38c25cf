//! The twisted Chevalley–Eilenberg complex `(C^n_α(L, M), dⁿ)` of a Hom-module and its
//! cohomology.
//!
//! An n-cochain is stored as a `dim M × C(dim L, n)` matrix whose columns are its values
//! on the wedge basis `e_{i₁} ∧ … ∧ e_{iₙ}` (`i₁ < … < iₙ`, lexicographic). Spaces of
//! cochains are subspaces of the row-major flattenings of these matrices.

use crate::action::HomAction;
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, axpy, is_zero_vector, scale_vector, unit_vector, zero_vector, Matrix, Subspace};
use crate::scalar::Field;

/// Strictly increasing index tuples of length `n` from `0..dim`, in lexicographic order.
pub fn wedge_basis(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            if dim - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= dim {
        go(0, dim, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coordinates of `v₁ ∧ … ∧ vₙ` in the wedge basis of `Λⁿ F^dim`: the maximal minors of
/// the matrix with columns `vᵢ`.
pub fn wedge_coordinates<F: Field>(dim: usize, vectors: &[Vec<F>]) -> Vec<F> {
    let n = vectors.len();
    let cols = Matrix::from_columns(dim, vectors).expect("wedge factors have ambient length");
    wedge_basis(dim, n)
        .iter()
        .map(|rows| {
            let minor = Matrix::from_rows(rows.iter().map(|&r| cols.row(r).to_vec()).collect()).expect("square minor");
            if n == 0 {
                F::one()
            } else {
                minor.determinant()
            }
        })
        .collect()
}

/// `Λⁿ A : Λⁿ F^cols → Λⁿ F^rows`.
pub fn wedge_power<F: Field>(a: &Matrix<F>, n: usize) -> Matrix<F> {
    let cols = a.columns();
    let source = wedge_basis(a.cols(), n);
    let images: Vec<Vec<F>> = source
        .iter()
        .map(|t| {
            let vs: Vec<Vec<F>> = t.iter().map(|&i| cols[i].clone()).collect();
            wedge_coordinates(a.rows(), &vs)
        })
        .collect();
    Matrix::from_columns(binomial(a.rows(), n), &images).expect("wedge image length")
}

/// An alternating n-linear map `L → M`, stored on the wedge basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F> {
    degree: usize,
    dim_l: usize,
    values: Matrix<F>,
}

impl<F: Field> Cochain<F> {
    pub fn new(degree: usize, dim_l: usize, values: Matrix<F>) -> Result<Self> {
        let expected = binomial(dim_l, degree);
        if values.cols() != expected {
            return Err(Error::dims("cochain columns", expected, values.cols()));
        }
        Ok(Cochain { degree, dim_l, values })
    }

    pub fn zero(degree: usize, dim_l: usize, dim_m: usize) -> Self {
        Cochain {
            degree,
            dim_l,
            values: Matrix::zeros(dim_m, binomial(dim_l, degree)),
        }
    }

    pub fn from_flat(degree: usize, dim_l: usize, dim_m: usize, flat: &[F]) -> Self {
        let values = Matrix::from_flat(dim_m, binomial(dim_l, degree), flat.to_vec()).expect("flat cochain length");
        Cochain { degree, dim_l, values }
    }

    /// Values given on basis tuples; `value(&[i₁, …, iₙ])` for `i₁ < … < iₙ`.
    pub fn from_basis_values(
        degree: usize,
        dim_l: usize,
        dim_m: usize,
        mut value: impl FnMut(&[usize]) -> Vec<F>,
    ) -> Self {
        let cols: Vec<Vec<F>> = wedge_basis(dim_l, degree).iter().map(|t| value(t)).collect();
        let values = Matrix::from_columns(dim_m, &cols).expect("cochain value length");
        Cochain { degree, dim_l, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_m(&self) -> usize {
        self.values.rows()
    }

    pub fn values(&self) -> &Matrix<F> {
        &self.values
    }

    pub fn to_flat(&self) -> Vec<F> {
        self.values.to_flat()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// `f(x₁ ∧ … ∧ xₙ)`
    pub fn evaluate(&self, xs: &[Vec<F>]) -> Vec<F> {
        assert_eq!(
            xs.len(),
            self.degree,
            "cochain evaluated on the wrong number of arguments"
        );
        self.values.apply(&wedge_coordinates(self.dim_l, xs))
    }

    pub fn add(&self, other: &Cochain<F>) -> Cochain<F> {
        Cochain {
            values: self.values.add(&other.values),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain<F>) -> Cochain<F> {
        Cochain {
            values: self.values.sub(&other.values),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &F) -> Cochain<F> {
        Cochain {
            values: self.values.scale(c),
            ..self.clone()
        }
    }

    /// `f ∘ (g ∧ … ∧ g)` for a linear map `g: L' → L`.
    pub fn precompose(&self, g: &Matrix<F>) -> Cochain<F> {
        assert_eq!(g.rows(), self.dim_l, "precomposed map has the wrong target");
        Cochain {
            degree: self.degree,
            dim_l: g.cols(),
            values: self.values.mul(&wedge_power(g, self.degree)),
        }
    }

    /// `φ ∘ f` for a linear map `φ: M → M'`.
    pub fn postcompose(&self, phi: &Matrix<F>) -> Cochain<F> {
        Cochain {
            values: phi.mul(&self.values),
            ..self.clone()
        }
    }
}

/// `C^n_α(L, M)` with its ambient space of all alternating maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace<F> {
    pub degree: usize,
    pub wedge_basis: Vec<Vec<usize>>,
    pub space: Subspace<F>,
}

impl<F: Field> CochainSpace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_cochains(&self, dim_l: usize, dim_m: usize) -> Vec<Cochain<F>> {
        self.space
            .basis()
            .iter()
            .map(|v| Cochain::from_flat(self.degree, dim_l, dim_m, v))
            .collect()
    }
}

/// `f ∘ α^{∧n} - α_M ∘ f`
pub fn equivariance_defect<F: Field>(action: &HomAction<F>, f: &Cochain<F>) -> Matrix<F> {
    let lambda = wedge_power(action.algebra().alpha(), f.degree());
    f.values().mul(&lambda).sub(&action.alpha_m().mul(f.values()))
}

pub fn is_equivariant<F: Field>(action: &HomAction<F>, f: &Cochain<F>) -> bool {
    equivariance_defect(action, f).is_zero()
}

/// `C^n_α(L, M) = {f : f ∘ α^{∧n} = α_M ∘ f}`; in degree 0 these are the fixed points of
/// `α_M`.
pub fn cochain_space<F: Field>(action: &HomAction<F>, n: usize) -> CochainSpace<F> {
    let (l, m) = (action.dim_l(), action.dim_m());
    let wedge = wedge_basis(l, n);
    let c = wedge.len();
    let lambda = wedge_power(action.algebra().alpha(), n);
    let alpha_m = action.alpha_m();
    let constraints = Matrix::from_linear_map(m * c, m * c, |flat| {
        let f = Matrix::from_flat(m, c, flat.to_vec()).expect("flat length");
        f.mul(&lambda).sub(&alpha_m.mul(&f)).to_flat()
    });
    CochainSpace {
        degree: n,
        wedge_basis: wedge,
        space: constraints.kernel(),
    }
}

/// Precomputed data for `dⁿ`: for every output tuple, the action terms
/// `(sign, matrix of α^n(x_k)·-, wedge coordinates of the remaining arguments)` and the
/// summed wedge coordinates of the bracket terms.
struct DifferentialPlan<F> {
    action_terms: Vec<Vec<(Matrix<F>, Vec<F>)>>,
    bracket_terms: Vec<Vec<F>>,
}

fn plan<F: Field>(action: &HomAction<F>, n: usize) -> DifferentialPlan<F> {
    let l = action.algebra();
    let dim = l.dim();
    let alpha = l.alpha();
    let alpha_n = alpha.pow(n as u32);
    let reps: Vec<Matrix<F>> = (0..dim)
        .map(|i| action.representation(&alpha_n.apply(&unit_vector(dim, i))))
        .collect();
    let mut action_terms = Vec::new();
    let mut bracket_terms = Vec::new();
    for tuple in wedge_basis(dim, n + 1) {
        let xs: Vec<Vec<F>> = tuple.iter().map(|&i| unit_vector(dim, i)).collect();
        let axs: Vec<Vec<F>> = xs.iter().map(|x| alpha.apply(x)).collect();
        let mut terms = Vec::new();
        for k in 0..=n {
            let rest: Vec<Vec<F>> = xs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, x)| x.clone())
                .collect();
            let coords = wedge_coordinates(dim, &rest);
            let rep = if k % 2 == 0 {
                reps[tuple[k]].clone()
            } else {
                reps[tuple[k]].neg()
            };
            terms.push((rep, coords));
        }
        let mut sum = zero_vector(binomial(dim, n));
        for a in 0..=n {
            for b in a + 1..=n {
                let mut args = vec![l.bracket(&xs[a], &xs[b])];
                args.extend(
                    axs.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != a && *j != b)
                        .map(|(_, x)| x.clone()),
                );
                let coords = wedge_coordinates(dim, &args);
                let sign = if (a + b) % 2 == 0 { F::one() } else { F::one().neg_ref() };
                axpy(&mut sum, &sign, &coords);
            }
        }
        action_terms.push(terms);
        bracket_terms.push(sum);
    }
    DifferentialPlan {
        action_terms,
        bracket_terms,
    }
}

fn apply_plan<F: Field>(plan: &DifferentialPlan<F>, f: &Matrix<F>) -> Vec<Vec<F>> {
    plan.action_terms
        .iter()
        .zip(&plan.bracket_terms)
        .map(|(terms, brackets)| {
            let mut value = f.apply(brackets);
            for (rep, coords) in terms {
                value = add_vectors(&value, &rep.apply(&f.apply(coords)));
            }
            value
        })
        .collect()
}

/// `dⁿ f (x₁, …, x_{n+1}) = Σᵢ (-1)^{i+1} αⁿ(xᵢ)·f(…, x̂ᵢ, …)
///   + Σ_{i<j} (-1)^{i+j} f([xᵢ, xⱼ], α(x₁), …, α̂(xᵢ), …, α̂(xⱼ), …, α(x_{n+1}))`
pub fn differential<F: Field>(action: &HomAction<F>, f: &Cochain<F>) -> Cochain<F> {
    let p = plan(action, f.degree());
    let cols = apply_plan(&p, f.values());
    let values = Matrix::from_columns(action.dim_m(), &cols).expect("value length");
    Cochain {
        degree: f.degree() + 1,
        dim_l: action.dim_l(),
        values,
    }
}

/// Matrix of `dⁿ` between the flattened spaces of all alternating maps.
pub fn differential_matrix<F: Field>(action: &HomAction<F>, n: usize) -> Matrix<F> {
    let (l, m) = (action.dim_l(), action.dim_m());
    let (c_in, c_out) = (binomial(l, n), binomial(l, n + 1));
    let p = plan(action, n);
    Matrix::from_linear_map(m * c_in, m * c_out, |flat| {
        let f = Matrix::from_flat(m, c_in, flat.to_vec()).expect("flat length");
        let cols = apply_plan(&p, &f);
        Matrix::from_columns(m, &cols).expect("value length").to_flat()
    })
}

/// `dⁿ` restricted to `C^n_α`, in the canonical bases of `C^n_α` and `C^{n+1}_α`.
pub fn restricted_differential<F: Field>(action: &HomAction<F>, n: usize) -> Matrix<F> {
    let source = cochain_space(action, n);
    let target = cochain_space(action, n + 1);
    let d = differential_matrix(action, n);
    let cols: Vec<Vec<F>> = source
        .space
        .basis()
        .iter()
        .map(|b| {
            target
                .space
                .coordinates(&d.apply(b))
                .expect("d preserves equivariant cochains")
        })
        .collect();
    Matrix::from_columns(target.dim(), &cols).expect("coordinate length")
}

/// `B^n_α`, the image of `C^{n-1}_α` under `d^{n-1}`.
pub fn coboundaries<F: Field>(action: &HomAction<F>, n: usize) -> Subspace<F> {
    let ambient = action.dim_m() * binomial(action.dim_l(), n);
    if n == 0 {
        return Subspace::zero(ambient);
    }
    let d = differential_matrix(action, n - 1);
    cochain_space(action, n - 1).space.image_under(&d)
}

/// `Z^n_α`, the kernel of `dⁿ` on `C^n_α`.
pub fn cocycles<F: Field>(action: &HomAction<F>, n: usize) -> Subspace<F> {
    let c = cochain_space(action, n);
    let kernel = differential_matrix(action, n).kernel();
    c.space.intersection(&kernel).expect("same ambient")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup<F> {
    pub degree: usize,
    pub dim: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Cocycles whose classes form a basis of `Hⁿ_α`.
    pub representatives: Vec<Cochain<F>>,
}

pub fn cohomology_group<F: Field>(action: &HomAction<F>, n: usize) -> CohomologyGroup<F> {
    let (l, m) = (action.dim_l(), action.dim_m());
    let c = cochain_space(action, n);
    let z = cocycles(action, n);
    let b = coboundaries(action, n);
    let reps = b.quotient_basis(&z).expect("same ambient");
    CohomologyGroup {
        degree: n,
        dim: z.dim() - b.dim(),
        cochain_dim: c.dim(),
        cocycle_dim: z.dim(),
        coboundary_dim: b.dim(),
        representatives: reps.iter().map(|v| Cochain::from_flat(n, l, m, v)).collect(),
    }
}

fn check_shape<F: Field>(action: &HomAction<F>, c: &Cochain<F>) -> Result<()> {
    if c.dim_l() != action.dim_l() || c.dim_m() != action.dim_m() {
        return Err(Error::dims("cochain shape", action.dim_m(), c.dim_m()));
    }
    if !is_equivariant(action, c) {
        return Err(Error::NotEquivariant);
    }
    Ok(())
}

pub fn is_cocycle<F: Field>(action: &HomAction<F>, c: &Cochain<F>) -> Result<bool> {
    check_shape(action, c)?;
    Ok(differential(action, c).is_zero())
}

/// Some `b ∈ C^{n-1}_α` with `d^{n-1} b = c`, or `None`.
pub fn coboundary_preimage<F: Field>(action: &HomAction<F>, c: &Cochain<F>) -> Result<Option<Cochain<F>>> {
    check_shape(action, c)?;
    let n = c.degree();
    let (l, m) = (action.dim_l(), action.dim_m());
    if n == 0 {
        return Ok(c.is_zero().then(|| Cochain::zero(0, l, m)));
    }
    let source = cochain_space(action, n - 1);
    let d = differential_matrix(action, n - 1);
    let basis = source.space.basis_matrix();
    let system = d.mul(&basis);
    Ok(system
        .solve(&c.to_flat())
        .map(|y| Cochain::from_flat(n - 1, l, m, &basis.apply(&y))))
}

pub fn is_coboundary<F: Field>(action: &HomAction<F>, c: &Cochain<F>) -> Result<bool> {
    Ok(coboundary_preimage(action, c)?.is_some())
}

/// `θ` with `w - w' = dθ` when the two cocycles are cohomologous.
pub fn cohomologous<F: Field>(action: &HomAction<F>, w: &Cochain<F>, w2: &Cochain<F>) -> Result<Option<Cochain<F>>> {
    if !is_cocycle(action, w)? || !is_cocycle(action, w2)? || w.degree() != w2.degree() {
        return Err(Error::NotACocycle);
    }
    coboundary_preimage(action, &w.sub(w2))
}

/// Residual of the invariant-theoretic description of `H⁰`: the kernel of `d⁰` on the
/// fixed points must equal `{m : α_M m = m, x·m = 0}`.
pub fn h0_matches_invariants<F: Field>(action: &HomAction<F>) -> bool {
    cocycles(action, 0) == action.invariants()
}

/// The zero-padding check `dⁿ⁺¹ ∘ dⁿ = 0` on `C^n_α`.
pub fn square_vanishes<F: Field>(action: &HomAction<F>, n: usize) -> bool {
    let d0 = differential_matrix(action, n);
    let d1 = differential_matrix(action, n + 1);
    cochain_space(action, n)
        .space
        .basis()
        .iter()
        .all(|b| is_zero_vector(&d1.apply(&d0.apply(b))))
}

/// `dⁿ(C^n_α) ⊆ C^{n+1}_α`
pub fn differential_preserves_equivariance<F: Field>(action: &HomAction<F>, n: usize) -> bool {
    let d = differential_matrix(action, n);
    let target = cochain_space(action, n + 1);
    cochain_space(action, n)
        .space
        .basis()
        .iter()
        .all(|b| target.space.contains_vector(&d.apply(b)))
}

/// `f(x) = Σ cᵢ fᵢ(x)` for cochains of equal shape.
pub fn combine<F: Field>(cochains: &[Cochain<F>], coeffs: &[F]) -> Option<Cochain<F>> {
    let first = cochains.first()?;
    let mut flat = zero_vector(first.to_flat().len());
    for (c, k) in cochains.iter().zip(coeffs) {
        flat = add_vectors(&flat, &scale_vector(k, &c.to_flat()));
    }
    Some(Cochain::from_flat(first.degree(), first.dim_l(), first.dim_m(), &flat))
}
