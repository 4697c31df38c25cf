//! Hom-actions of a Hom-Lie algebra on another one, Hom-modules, (s-)semidirect
//! products and spaces of derivations.

use crate::algebra::{morphism_report, HomLie};
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Subspace};
use crate::scalar::Field;

/// A bilinear map `L × M → M` with `M` a Hom-Lie algebra in its own right.
///
/// When `M` is abelian and the axioms hold this is a Hom-`L`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAction<F> {
    algebra: HomLie<F>,
    space: HomLie<F>,
    table: Vec<Vec<F>>,
}

/// The three action axioms, evaluated on basis elements:
///
/// * (a) `[x, y]·α(m) = α(x)·(y·m) - α(y)·(x·m)`
/// * (b) `α(x)·[m, m'] = [x·m, α(m')] + [α(m), x·m']`
/// * (c) `α(x·m) = α(x)·α(m)`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub is_module: bool,
}

impl ActionReport {
    pub fn is_action(&self) -> bool {
        self.a && self.b && self.c
    }
}

impl<F: Field> HomAction<F> {
    /// `table[i * dim M + j]` is `e_i · m_j`.
    pub fn new(algebra: HomLie<F>, space: HomLie<F>, table: Vec<Vec<F>>) -> Result<Self> {
        let (n, m) = (algebra.dim(), space.dim());
        if table.len() != n * m {
            return Err(Error::dims("action table", n * m, table.len()));
        }
        if let Some(bad) = table.iter().find(|v| v.len() != m) {
            return Err(Error::dims("action value", m, bad.len()));
        }
        Ok(HomAction { algebra, space, table })
    }

    pub fn from_fn(algebra: HomLie<F>, space: HomLie<F>, mut act: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let mut table = Vec::with_capacity(algebra.dim() * space.dim());
        for i in 0..algebra.dim() {
            for j in 0..space.dim() {
                table.push(act(i, j));
            }
        }
        Self::new(algebra, space, table)
    }

    /// An action on the abelian algebra `(M, α_M)`.
    pub fn module(algebra: HomLie<F>, alpha_m: Matrix<F>, table: Vec<Vec<F>>) -> Result<Self> {
        let space = HomLie::abelian(alpha_m.rows(), alpha_m)?;
        Self::new(algebra, space, table)
    }

    pub fn trivial(algebra: HomLie<F>, alpha_m: Matrix<F>) -> Result<Self> {
        let m = alpha_m.rows();
        let n = algebra.dim();
        Self::module(algebra, alpha_m, vec![zero_vector(m); n * m])
    }

    /// `L` acting on itself by the bracket.
    pub fn adjoint(algebra: HomLie<F>) -> Self {
        let n = algebra.dim();
        let table = (0..n * n)
            .map(|k| algebra.basis_bracket(k / n, k % n).to_vec())
            .collect();
        HomAction {
            space: algebra.clone(),
            algebra,
            table,
        }
    }

    /// The adjoint action on the underlying space of `L` with its bracket forgotten,
    /// `α_M = α_L`. Hom-Jacobi is exactly axiom (a) here.
    pub fn adjoint_module(algebra: HomLie<F>) -> Self {
        let adjoint = Self::adjoint(algebra);
        let space = HomLie::abelian(adjoint.dim_m(), adjoint.alpha_m().clone()).expect("square twist");
        HomAction { space, ..adjoint }
    }

    /// `L` acting on an ideal `K` by the bracket, `K` carrying the restricted structure.
    pub fn on_ideal(algebra: HomLie<F>, ideal: &Subspace<F>) -> Result<Self> {
        if !algebra.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let (space, _) = algebra.restrict(ideal)?;
        let n = algebra.dim();
        let basis = ideal.basis().to_vec();
        Self::from_fn(algebra.clone(), space, |i, j| {
            ideal
                .coordinates(&algebra.bracket(&unit_vector(n, i), &basis[j]))
                .expect("ideal absorbs brackets")
        })
    }

    /// The same module made into a `source`-module through `f: source → L`.
    pub fn pullback(&self, f: &Matrix<F>, source: &HomLie<F>) -> Result<Self> {
        if f.shape() != (self.algebra.dim(), source.dim()) {
            return Err(Error::dims("pullback map", self.algebra.dim(), f.rows()));
        }
        let m = self.space.dim();
        let cols = f.columns();
        Self::from_fn(source.clone(), self.space.clone(), |i, j| {
            self.act(&cols[i], &unit_vector(m, j))
        })
    }

    pub fn algebra(&self) -> &HomLie<F> {
        &self.algebra
    }

    pub fn space(&self) -> &HomLie<F> {
        &self.space
    }

    pub fn alpha_m(&self) -> &Matrix<F> {
        self.space.alpha()
    }

    pub fn dim_l(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.space.dim()
    }

    pub fn table(&self) -> &[Vec<F>] {
        &self.table
    }

    pub fn act_basis(&self, i: usize, j: usize) -> &[F] {
        &self.table[i * self.dim_m() + j]
    }

    pub fn act(&self, x: &[F], m: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.dim_l(), "acting element has wrong length");
        assert_eq!(m.len(), self.dim_m(), "acted-on element has wrong length");
        let mut out = zero_vector(self.dim_m());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, mj) in m.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &xi.mul_ref(mj), self.act_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `m ↦ x·m`.
    pub fn representation(&self, x: &[F]) -> Matrix<F> {
        Matrix::from_linear_map(self.dim_m(), self.dim_m(), |m| self.act(x, m))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|v| is_zero_vector(v))
    }

    pub fn validate(&self) -> ActionReport {
        let (n, m) = (self.dim_l(), self.dim_m());
        let l = &self.algebra;
        let sp = &self.space;
        let ex = |i| unit_vector::<F>(n, i);
        let em = |j| unit_vector::<F>(m, j);
        let mut a = true;
        let mut b = true;
        let mut c = true;
        for i in 0..n {
            let x = ex(i);
            let ax = l.twist(&x);
            for j in 0..m {
                let mj = em(j);
                let xm = self.act(&x, &mj);
                if c && sp.twist(&xm) != self.act(&ax, &sp.twist(&mj)) {
                    c = false;
                }
                if a {
                    for k in 0..n {
                        let y = ex(k);
                        let lhs = self.act(&l.bracket(&x, &y), &sp.twist(&mj));
                        let rhs = sub_vectors(&self.act(&ax, &self.act(&y, &mj)), &self.act(&l.twist(&y), &xm));
                        if lhs != rhs {
                            a = false;
                            break;
                        }
                    }
                }
                if b {
                    for k in 0..m {
                        let mk = em(k);
                        let lhs = self.act(&ax, &sp.bracket(&mj, &mk));
                        let rhs = add_vectors(
                            &sp.bracket(&xm, &sp.twist(&mk)),
                            &sp.bracket(&sp.twist(&mj), &self.act(&x, &mk)),
                        );
                        if lhs != rhs {
                            b = false;
                            break;
                        }
                    }
                }
            }
        }
        let is_module = a && b && c && sp.is_abelian();
        ActionReport { a, b, c, is_module }
    }

    pub fn is_module(&self) -> bool {
        self.validate().is_module
    }

    pub(crate) fn require_module(&self) -> Result<()> {
        let r = self.validate();
        if r.is_module {
            Ok(())
        } else {
            Err(Error::NotAModule(format!("{r:?}")))
        }
    }

    pub(crate) fn require_action(&self) -> Result<()> {
        let r = self.validate();
        if r.is_action() {
            Ok(())
        } else {
            Err(Error::InvalidAction(format!("{r:?}")))
        }
    }

    /// `{m : α_M(m) = m}`
    pub fn fixed_points(&self) -> Subspace<F> {
        self.alpha_m().sub(&Matrix::identity(self.dim_m())).kernel()
    }

    /// `{m : α_M(m) = m and x·m = 0 for all x}`
    pub fn invariants(&self) -> Subspace<F> {
        let (n, m) = (self.dim_l(), self.dim_m());
        let fixed = self.alpha_m().sub(&Matrix::identity(m));
        let mut stacked = fixed;
        for i in 0..n {
            stacked = stacked.vstack(&self.representation(&unit_vector(n, i)));
        }
        stacked.kernel()
    }
}

fn require_endomorphism<F: Field>(s: &Matrix<F>, l: &HomLie<F>) -> Result<()> {
    if s.shape() != (l.dim(), l.dim()) {
        return Err(Error::dims("twisting endomorphism", l.dim(), s.rows()));
    }
    if !morphism_report(s, l, l)?.holds() {
        return Err(Error::NotAnEndomorphism("s is not a Hom-Lie endomorphism".into()));
    }
    Ok(())
}

/// `M ⋊_s L` with the maps of the split sequence `M → M ⋊_s L ⇄ L`.
///
/// The basis lists the basis of `M` first, then that of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semidirect<F> {
    pub algebra: HomLie<F>,
    pub inclusion: Matrix<F>,
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

/// Bracket `[(m₁, x₁), (m₂, x₂)] = ([m₁, m₂] + s(x₁)·m₂ - s(x₂)·m₁, [x₁, x₂])` and
/// twist `(α_M, α_L)`.
pub fn semidirect<F: Field>(action: &HomAction<F>, s: &Matrix<F>) -> Result<Semidirect<F>> {
    action.require_action()?;
    let l = action.algebra();
    require_endomorphism(s, l)?;
    let (m, n) = (action.dim_m(), action.dim_l());
    let sp = action.space();
    let split = |v: &[F]| (v[..m].to_vec(), v[m..].to_vec());
    let bracket = |u: &[F], v: &[F]| -> Vec<F> {
        let (m1, x1) = split(u);
        let (m2, x2) = split(v);
        let mut top = sp.bracket(&m1, &m2);
        top = add_vectors(&top, &action.act(&s.apply(&x1), &m2));
        top = sub_vectors(&top, &action.act(&s.apply(&x2), &m1));
        top.extend(l.bracket(&x1, &x2));
        top
    };
    let alpha = action.alpha_m().block_diag(l.alpha());
    let algebra = HomLie::from_fn(m + n, alpha, |i, j| {
        bracket(&unit_vector(m + n, i), &unit_vector(m + n, j))
    })?;
    let inclusion = Matrix::identity(m).vstack(&Matrix::zeros(n, m));
    let projection = Matrix::zeros(n, m).hstack(&Matrix::identity(n));
    let section = projection.transpose();
    Ok(Semidirect {
        algebra,
        inclusion,
        projection,
        section,
    })
}

/// Row-major flattening index of a `dim M × dim L` matrix, the coordinates used for
/// spaces of linear maps `L → M` throughout the crate.
pub fn map_from_flat<F: Field>(dim_m: usize, dim_l: usize, flat: &[F]) -> Matrix<F> {
    Matrix::from_flat(dim_m, dim_l, flat.to_vec()).expect("flat map has dim M × dim L entries")
}

/// Residual of the `s`-derivation conditions: `d[x, y] - s(x)·d(y) + s(y)·d(x)` over
/// basis pairs followed by `α_M d - d α_L`, all flattened.
fn derivation_residual<F: Field>(action: &HomAction<F>, s: &Matrix<F>, d: &Matrix<F>) -> Vec<F> {
    let l = action.algebra();
    let n = l.dim();
    let cols = d.columns();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.apply(l.basis_bracket(i, j));
            let r1 = action.act(&s.apply(&unit_vector(n, i)), &cols[j]);
            let r2 = action.act(&s.apply(&unit_vector(n, j)), &cols[i]);
            out.extend(add_vectors(&sub_vectors(&lhs, &r1), &r2));
        }
    }
    out.extend(action.alpha_m().mul(d).sub(&d.mul(l.alpha())).to_flat());
    out
}

pub fn is_derivation<F: Field>(action: &HomAction<F>, s: &Matrix<F>, d: &Matrix<F>) -> bool {
    is_zero_vector(&derivation_residual(action, s, d))
}

/// `Der_s(L, M)` as a subspace of flattened `dim M × dim L` matrices.
pub fn derivation_space<F: Field>(action: &HomAction<F>, s: &Matrix<F>) -> Result<Subspace<F>> {
    action.require_module()?;
    require_endomorphism(s, action.algebra())?;
    let (m, n) = (action.dim_m(), action.dim_l());
    let probe = derivation_residual(action, s, &Matrix::zeros(m, n)).len();
    let constraints = Matrix::from_linear_map(m * n, probe, |flat| {
        derivation_residual(action, s, &map_from_flat(m, n, flat))
    });
    Ok(constraints.kernel())
}

fn span_of_maps<F: Field>(action: &HomAction<F>, map_for: impl Fn(&[F]) -> Matrix<F>) -> Subspace<F> {
    let (m, n) = (action.dim_m(), action.dim_l());
    let maps: Vec<Vec<F>> = action
        .fixed_points()
        .basis()
        .iter()
        .map(|v| map_for(v).to_flat())
        .collect();
    Subspace::from_spanning(m * n, &maps)
}

/// Span of `x ↦ α_L(x)·m` over the fixed points `α_M(m) = m`.
pub fn inner_alpha_derivations<F: Field>(action: &HomAction<F>) -> Subspace<F> {
    let n = action.dim_l();
    span_of_maps(action, |m| {
        Matrix::from_linear_map(n, action.dim_m(), |x| action.act(&action.algebra().twist(x), m))
    })
}

/// Span of `x ↦ x·m` over the fixed points, i.e. the image of `d⁰`.
pub fn coboundary_derivations<F: Field>(action: &HomAction<F>) -> Subspace<F> {
    let n = action.dim_l();
    span_of_maps(action, |m| {
        Matrix::from_linear_map(n, action.dim_m(), |x| action.act(x, m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    /// [e,f] = e with α = [[1,1],[0,1]] acting on span{e} with α_M = Id.
    fn ex_action() -> HomAction<Rational> {
        let l = HomLie::from_brackets(2, Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]), &[(0, 1, v(&[1, 0]))]).unwrap();
        HomAction::module(l, Matrix::identity(1), vec![v(&[0]), v(&[-1])]).unwrap()
    }

    fn sl2() -> HomLie<Rational> {
        HomLie::from_brackets(
            3,
            Matrix::identity(3),
            &[(0, 1, v(&[0, 0, 1])), (2, 0, v(&[2, 0, 0])), (2, 1, v(&[0, -2, 0]))],
        )
        .unwrap()
    }

    #[test]
    fn ex_action_is_a_module() {
        let act = ex_action();
        assert!(act.is_module());
        // α(x)·m = x·m on this fixture.
        for x in [v(&[1, 0]), v(&[0, 1])] {
            assert_eq!(act.act(&act.algebra().twist(&x), &v(&[1])), act.act(&x, &v(&[1])));
        }
    }

    #[test]
    fn adjoint_on_an_ideal() {
        let l = ex_action().algebra().clone();
        let ideal = Subspace::from_spanning(2, &[v(&[1, 0])]);
        let act = HomAction::on_ideal(l, &ideal).unwrap();
        assert!(act.validate().is_action());
        assert_eq!(act, ex_action());
    }

    #[test]
    fn broken_action_is_flagged() {
        let l = ex_action().algebra().clone();
        // e·e = e breaks (a) at x = e, y = f.
        let act = HomAction::module(l, Matrix::identity(1), vec![v(&[1]), v(&[-1])]).unwrap();
        let r = act.validate();
        assert!(!r.is_module);
    }

    #[test]
    fn semidirect_products() {
        let act = ex_action();
        let sd = semidirect(&act, &Matrix::identity(2)).unwrap();
        assert_eq!(sd.algebra.dim(), 3);
        assert!(sd.algebra.is_valid());
        assert!(sd.projection.mul(&sd.section).is_identity());
        assert!(sd.projection.mul(&sd.inclusion).is_zero());

        let zero_module = HomAction::trivial(act.algebra().clone(), Matrix::zeros(0, 0)).unwrap();
        let sd0 = semidirect(&zero_module, &Matrix::identity(2)).unwrap();
        assert_eq!(&sd0.algebra, act.algebra());
    }

    #[test]
    fn derivations_of_abelian_algebras() {
        let l = HomLie::<Rational>::abelian(2, Matrix::identity(2)).unwrap();
        let act = HomAction::trivial(l, Matrix::identity(3)).unwrap();
        assert_eq!(derivation_space(&act, &Matrix::identity(2)).unwrap().dim(), 6);
    }

    #[test]
    fn sl2_derivations_are_inner() {
        let act = HomAction::adjoint_module(sl2());
        let der = derivation_space(&act, &Matrix::identity(3)).unwrap();
        assert_eq!(der.dim(), 3);
        assert_eq!(der, coboundary_derivations(&act));
    }

    #[test]
    fn inner_derivation_spaces() {
        let act = ex_action();
        assert_eq!(inner_alpha_derivations(&act), coboundary_derivations(&act));
        assert_eq!(coboundary_derivations(&act).dim(), 1);
        let der = derivation_space(&act, act.algebra().alpha()).unwrap();
        assert!(der.contains(&coboundary_derivations(&act)));

        let l = act.algebra().clone();
        let no_fixed = HomAction::module(l, Matrix::zeros(1, 1), vec![v(&[0]), v(&[0])]).unwrap();
        assert!(inner_alpha_derivations(&no_fixed).is_zero());
        assert!(coboundary_derivations(&no_fixed).is_zero());
    }

    #[test]
    fn projection_onto_module_is_a_derivation() {
        let act = ex_action();
        let sd = semidirect(&act, &Matrix::identity(2)).unwrap();
        let over_e = act.pullback(&sd.projection, &sd.algebra).unwrap();
        let theta = Matrix::from_i64_rows(&[&[1, 0, 0]]);
        assert!(is_derivation(&over_e, &Matrix::identity(3), &theta));
    }
}
