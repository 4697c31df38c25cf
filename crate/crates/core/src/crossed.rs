//! Crossed modules (standard and α-twisted), cat¹-Hom-Lie algebras with the functors
//! between them, α-crossed extensions and the class `η(ξ) ∈ H³_α(L, M)`.

use crate::action::{semidirect, HomAction};
use crate::algebra::{morphism_report, HomLie};
use crate::cohomology::{coboundary_preimage, differential, is_equivariant, Cochain};
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, is_zero_vector, sub_vectors, unit_vector, Matrix, Subspace};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `μ(l·m) = [l, μ(m)]` and `μ(m)·m' = [m, m']`
    Standard,
    /// `μ(α(l)·m) = [l, μ(m)]` and `μ(α(m))·m' = [m, m']`
    Alpha,
}

/// `μ: M → L` together with an action of `L` on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule<F> {
    pub action: HomAction<F>,
    pub mu: Matrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossedReport {
    pub action_valid: bool,
    pub mu_morphism: bool,
    pub equivariance: bool,
    pub peiffer: bool,
    pub image_ideal: bool,
    pub kernel_central: bool,
    pub kernel_module: bool,
}

impl CrossedReport {
    pub fn holds(&self) -> bool {
        self.action_valid && self.mu_morphism && self.equivariance && self.peiffer
    }
}

impl<F: Field> CrossedModule<F> {
    pub fn new(action: HomAction<F>, mu: Matrix<F>) -> Result<Self> {
        if mu.shape() != (action.dim_l(), action.dim_m()) {
            return Err(Error::dims("μ", action.dim_l(), mu.rows()));
        }
        Ok(CrossedModule { action, mu })
    }

    /// `(H, L, inc)` for an ideal `H` of `L`, acting by the bracket.
    pub fn ideal_inclusion(algebra: HomLie<F>, ideal: &Subspace<F>) -> Result<Self> {
        let action = HomAction::on_ideal(algebra, ideal)?;
        Self::new(action, ideal.basis_matrix())
    }

    /// `(M, L, 0)`
    pub fn zero_map(action: HomAction<F>) -> Self {
        let mu = Matrix::zeros(action.dim_l(), action.dim_m());
        CrossedModule { action, mu }
    }

    pub fn source(&self) -> &HomLie<F> {
        self.action.space()
    }

    pub fn target(&self) -> &HomLie<F> {
        self.action.algebra()
    }

    fn axioms(&self, flavor: Flavor) -> (bool, bool) {
        let (l, m) = (self.target(), self.source());
        let (n, k) = (l.dim(), m.dim());
        let mut equivariance = true;
        let mut peiffer = true;
        for i in 0..n {
            let x = unit_vector(n, i);
            let acting = match flavor {
                Flavor::Standard => x.clone(),
                Flavor::Alpha => l.twist(&x),
            };
            for j in 0..k {
                let mj = unit_vector(k, j);
                if self.mu.apply(&self.action.act(&acting, &mj)) != l.bracket(&x, &self.mu.apply(&mj)) {
                    equivariance = false;
                }
            }
        }
        for i in 0..k {
            let mi = unit_vector(k, i);
            let twisted = match flavor {
                Flavor::Standard => mi.clone(),
                Flavor::Alpha => m.twist(&mi),
            };
            let image = self.mu.apply(&twisted);
            for j in 0..k {
                let mj = unit_vector(k, j);
                if self.action.act(&image, &mj) != m.bracket(&mi, &mj) {
                    peiffer = false;
                }
            }
        }
        (equivariance, peiffer)
    }

    /// `ker μ` as a module over `L / im μ`, when the induced action is well defined.
    fn kernel_is_coker_module(&self) -> bool {
        let (l, m) = (self.target(), self.source());
        let kernel = self.mu.kernel();
        let image = self.mu.image();
        if !l.is_ideal(&image) {
            return false;
        }
        let n = l.dim();
        let stable = kernel.basis().iter().all(|v| {
            kernel.contains_vector(&m.twist(v))
                && (0..n).all(|i| kernel.contains_vector(&self.action.act(&unit_vector(n, i), v)))
        });
        let image_acts_trivially = image
            .basis()
            .iter()
            .all(|p| kernel.basis().iter().all(|v| is_zero_vector(&self.action.act(p, v))));
        if !stable || !image_acts_trivially {
            return false;
        }
        let (coker, _) = l.quotient(&image).expect("image is an ideal");
        let reps = image.complement_indices();
        let coords = |v: Vec<F>| kernel.coordinates(&v).expect("kernel is stable");
        let kb = kernel.basis().to_vec();
        let alpha = Matrix::from_columns(kb.len(), &kb.iter().map(|v| coords(m.twist(v))).collect::<Vec<_>>());
        let Ok(alpha) = alpha else { return false };
        let table: Vec<Vec<F>> = reps
            .iter()
            .flat_map(|&r| kb.iter().map(move |v| (r, v.clone())))
            .map(|(r, v)| coords(self.action.act(&unit_vector(n, r), &v)))
            .collect();
        let kernel_abelian = kb.iter().all(|a| kb.iter().all(|b| is_zero_vector(&m.bracket(a, b))));
        kernel_abelian
            && HomAction::module(coker, alpha, table)
                .map(|a| a.is_module())
                .unwrap_or(false)
    }

    pub fn validate(&self, flavor: Flavor) -> Result<CrossedReport> {
        let action = self.action.validate();
        if !action.is_action() {
            return Err(Error::InvalidAction(format!("{action:?}")));
        }
        let mu_morphism = morphism_report(&self.mu, self.source(), self.target())?.holds();
        let (equivariance, peiffer) = self.axioms(flavor);
        let image_ideal = self.target().is_ideal(&self.mu.image());
        let kernel_central = self.source().centre().contains(&self.mu.kernel());
        Ok(CrossedReport {
            action_valid: true,
            mu_morphism,
            equivariance,
            peiffer,
            image_ideal,
            kernel_central,
            kernel_module: self.kernel_is_coker_module(),
        })
    }

    /// Standard crossed module test through the semidirect products: `(μ, 1): M ⋊ L →
    /// L ⋊ L` and `(1, μ): M ⋊ M → M ⋊ L` must both be morphisms.
    pub fn validate_via_semidirect(&self) -> Result<bool> {
        let (l, m) = (self.target(), self.source());
        let (n, k) = (l.dim(), m.dim());
        let ml = semidirect(&self.action, &Matrix::identity(n))?;
        let ll = semidirect(&HomAction::adjoint(l.clone()), &Matrix::identity(n))?;
        let mm = semidirect(&HomAction::adjoint(m.clone()), &Matrix::identity(k))?;
        let mu_one = self.mu.block_diag(&Matrix::identity(n));
        let one_mu = Matrix::identity(k).block_diag(&self.mu);
        Ok(morphism_report(&mu_one, &ml.algebra, &ll.algebra)?.holds()
            && morphism_report(&one_mu, &mm.algebra, &ml.algebra)?.holds())
    }
}

/// `(f, φ)` with `f: M → M'`, `φ: L → L'` morphisms, `φ ∘ μ = μ' ∘ f` and
/// `f(l·m) = φ(l)·f(m)`.
pub fn is_crossed_morphism<F: Field>(
    f: &Matrix<F>,
    phi: &Matrix<F>,
    cm: &CrossedModule<F>,
    other: &CrossedModule<F>,
) -> Result<bool> {
    if f.shape() != (other.source().dim(), cm.source().dim())
        || phi.shape() != (other.target().dim(), cm.target().dim())
    {
        return Err(Error::dims("crossed module morphism", other.source().dim(), f.rows()));
    }
    if !morphism_report(f, cm.source(), other.source())?.holds()
        || !morphism_report(phi, cm.target(), other.target())?.holds()
    {
        return Ok(false);
    }
    if phi.mul(&cm.mu) != other.mu.mul(f) {
        return Ok(false);
    }
    let (n, k) = (cm.target().dim(), cm.source().dim());
    Ok((0..n).all(|i| {
        (0..k).all(|j| {
            let (x, m) = (unit_vector(n, i), unit_vector(k, j));
            f.apply(&cm.action.act(&x, &m)) == other.action.act(&phi.apply(&x), &f.apply(&m))
        })
    }))
}

/// A cat¹-Hom-Lie algebra `(P, N, s, t)`. The maps `s` and `t` are stored as
/// endomorphisms of `P` whose images lie in the subalgebra `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cat1<F> {
    pub algebra: HomLie<F>,
    pub sub: Subspace<F>,
    pub s: Matrix<F>,
    pub t: Matrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Cat1Report {
    pub sub_algebra: bool,
    pub s_morphism: bool,
    pub t_morphism: bool,
    pub images_in_sub: bool,
    pub s_retracts: bool,
    pub t_retracts: bool,
    pub kernels_commute: bool,
}

impl Cat1Report {
    pub fn holds(&self) -> bool {
        self.sub_algebra
            && self.s_morphism
            && self.t_morphism
            && self.images_in_sub
            && self.s_retracts
            && self.t_retracts
            && self.kernels_commute
    }
}

impl<F: Field> Cat1<F> {
    pub fn validate(&self) -> Cat1Report {
        let p = &self.algebra;
        let n = p.dim();
        if self.s.shape() != (n, n) || self.t.shape() != (n, n) || self.sub.ambient_dim() != n {
            return Cat1Report::default();
        }
        let hom = |m: &Matrix<F>| morphism_report(m, p, p).map(|r| r.holds()).unwrap_or(false);
        let images_in_sub = self.sub.contains(&self.s.image()) && self.sub.contains(&self.t.image());
        let fixes = |m: &Matrix<F>| self.sub.basis().iter().all(|v| &m.apply(v) == v);
        let ks = self.s.kernel();
        let kt = self.t.kernel();
        let kernels_commute = ks
            .basis()
            .iter()
            .all(|a| kt.basis().iter().all(|b| is_zero_vector(&p.bracket(a, b))));
        Cat1Report {
            sub_algebra: p.is_subalgebra(&self.sub),
            s_morphism: hom(&self.s),
            t_morphism: hom(&self.t),
            images_in_sub,
            s_retracts: fixes(&self.s),
            t_retracts: fixes(&self.t),
            kernels_commute,
        }
    }
}

/// `Φ: P → P'` a morphism with `Φ(N) ⊆ N'`, `Φ s = s' Φ` and `Φ t = t' Φ`.
pub fn is_cat1_morphism<F: Field>(phi: &Matrix<F>, c: &Cat1<F>, other: &Cat1<F>) -> bool {
    phi.shape() == (other.algebra.dim(), c.algebra.dim())
        && morphism_report(phi, &c.algebra, &other.algebra)
            .map(|r| r.holds())
            .unwrap_or(false)
        && other.sub.contains(&c.sub.image_under(phi))
        && phi.mul(&c.s) == other.s.mul(phi)
        && phi.mul(&c.t) == other.t.mul(phi)
}

/// `S(M, L, μ) = (M ⋊ L, L, s(m, l) = (0, l), t(m, l) = (0, μ(m) + l))`.
pub fn functor_s<F: Field>(cm: &CrossedModule<F>) -> Result<Cat1<F>> {
    if !cm.validate(Flavor::Standard)?.holds() {
        return Err(Error::InvalidCrossedModule("S needs a standard crossed module".into()));
    }
    let (n, k) = (cm.target().dim(), cm.source().dim());
    let sd = semidirect(&cm.action, &Matrix::identity(n))?;
    let s = Matrix::zeros(k, k).block_diag(&Matrix::identity(n));
    let mut t = s.clone();
    t.set_block(k, 0, &cm.mu);
    let sub = sd.section.image();
    Ok(Cat1 {
        algebra: sd.algebra,
        sub,
        s,
        t,
    })
}

/// `P(P, N, s, t) = (ker s, N, t|)` with `N` acting on `ker s` by the bracket.
pub fn functor_p<F: Field>(c: &Cat1<F>) -> Result<CrossedModule<F>> {
    let report = c.validate();
    if !report.holds() {
        return Err(Error::InvalidCat1(format!("{report:?}")));
    }
    let p = &c.algebra;
    let kernel = c.s.kernel();
    let (ker_alg, _) = p.restrict(&kernel)?;
    let (sub_alg, _) = p.restrict(&c.sub)?;
    let kb = kernel.basis().to_vec();
    let nb = c.sub.basis().to_vec();
    let action = HomAction::from_fn(sub_alg, ker_alg, |i, j| {
        kernel
            .coordinates(&p.bracket(&nb[i], &kb[j]))
            .expect("ker s is an ideal")
    })?;
    let mu_cols: Vec<Vec<F>> = kb
        .iter()
        .map(|v| c.sub.coordinates(&c.t.apply(v)).expect("t lands in N"))
        .collect();
    let mu = Matrix::from_columns(nb.len(), &mu_cols)?;
    CrossedModule::new(action, mu)
}

/// The isomorphism `(f, φ): cm → P(S(cm))`, checked before it is returned.
pub fn ps_isomorphism<F: Field>(cm: &CrossedModule<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let c = functor_s(cm)?;
    let back = functor_p(&c)?;
    let (n, k) = (cm.target().dim(), cm.source().dim());
    let kernel = c.s.kernel();
    let f = Matrix::from_linear_map(k, k, |m| {
        let mut v = m.to_vec();
        v.extend(std::iter::repeat_n(F::zero(), n));
        kernel.coordinates(&v).expect("(m, 0) lies in ker s")
    });
    let phi = Matrix::from_linear_map(n, n, |l| {
        let mut v = vec![F::zero(); k];
        v.extend(l.iter().cloned());
        c.sub.coordinates(&v).expect("(0, l) lies in N")
    });
    if !(is_crossed_morphism(&f, &phi, cm, &back)? && f.is_invertible() && phi.is_invertible()) {
        return Err(Error::InvalidCrossedModule("P(S(cm)) is not isomorphic to cm".into()));
    }
    Ok((f, phi))
}

/// The isomorphism `Φ(k, n) = k + n` from `S(P(c))` onto `c`, checked before it is
/// returned.
pub fn sp_isomorphism<F: Field>(c: &Cat1<F>) -> Result<Matrix<F>> {
    let cm = functor_p(c)?;
    let back = functor_s(&cm)?;
    let phi = c.s.kernel().basis_matrix().hstack(&c.sub.basis_matrix());
    if !(is_cat1_morphism(&phi, &back, c) && phi.is_invertible()) {
        return Err(Error::InvalidCat1("S(P(c)) is not isomorphic to c".into()));
    }
    Ok(phi)
}

/// `P(Φ)`: the restrictions of a cat¹ morphism to `ker s → ker s'` and `N → N'`, in the
/// bases used by [`functor_p`].
pub fn functor_p_morphism<F: Field>(phi: &Matrix<F>, c: &Cat1<F>, other: &Cat1<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if !is_cat1_morphism(phi, c, other) {
        return Err(Error::NotAMorphism("not a cat¹ morphism".into()));
    }
    let restrict = |from: &Subspace<F>, to: &Subspace<F>| -> Result<Matrix<F>> {
        let cols: Option<Vec<Vec<F>>> = from.basis().iter().map(|v| to.coordinates(&phi.apply(v))).collect();
        let cols = cols.ok_or_else(|| Error::NotAMorphism("Φ does not respect the kernels".into()))?;
        Matrix::from_columns(to.dim(), &cols)
    };
    Ok((
        restrict(&c.s.kernel(), &other.s.kernel())?,
        restrict(&c.sub, &other.sub)?,
    ))
}

/// `S(f, φ) = f ⊕ φ: M ⋊ L → M' ⋊ L'`.
pub fn functor_s_morphism<F: Field>(
    f: &Matrix<F>,
    phi: &Matrix<F>,
    cm: &CrossedModule<F>,
    other: &CrossedModule<F>,
) -> Result<Matrix<F>> {
    if !is_crossed_morphism(f, phi, cm, other)? {
        return Err(Error::NotAMorphism("not a crossed module morphism".into()));
    }
    Ok(f.block_diag(phi))
}

/// `0 → M →^χ N →^μ P ⇄ L → 0` with `(N, P, μ)` an α-crossed module, `σ` a Hom-linear
/// section of `π` and `ρ` a Hom-linear section of `μ` on `im μ`. `ρ` is stored on all of
/// `P`; only its values on `im μ` matter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCrossedExtension<F> {
    pub module: HomAction<F>,
    pub crossed: CrossedModule<F>,
    pub chi: Matrix<F>,
    pub pi: Matrix<F>,
    pub sigma: Matrix<F>,
    pub rho: Matrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CrossedExtensionReport {
    pub exact_at_m: bool,
    pub exact_at_n: bool,
    pub exact_at_p: bool,
    pub exact_at_l: bool,
    pub alpha_crossed: bool,
    pub chi_morphism: bool,
    pub pi_morphism: bool,
    pub sigma_section: bool,
    pub sigma_hom_linear: bool,
    pub rho_section: bool,
    pub rho_hom_linear: bool,
    pub module_matches: bool,
}

impl CrossedExtensionReport {
    pub fn holds(&self) -> bool {
        self.exact_at_m
            && self.exact_at_n
            && self.exact_at_p
            && self.exact_at_l
            && self.alpha_crossed
            && self.chi_morphism
            && self.pi_morphism
            && self.sigma_section
            && self.sigma_hom_linear
            && self.rho_section
            && self.rho_hom_linear
            && self.module_matches
    }
}

/// The class `h_ξ` together with its verification flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eta<F> {
    /// `f(l₁, l₂) = ρ([σ l₁, σ l₂] - σ[l₁, l₂])`, an `N`-valued 2-cochain.
    pub f: Cochain<F>,
    /// `h_ξ` with values in `M`.
    pub h: Cochain<F>,
    pub in_kernel: bool,
    pub equivariant: bool,
    pub cocycle: bool,
}

/// Outcome of [`eta_section_independence`]: one certificate `b` per trial with
/// `h_trial - h_base = d²b`, or `None` where the classes differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTrials<F> {
    pub certificates: Vec<Option<Cochain<F>>>,
}

impl<F> SectionTrials<F> {
    pub fn all_cohomologous(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }
}

impl<F: Field> AlphaCrossedExtension<F> {
    fn n_alg(&self) -> &HomLie<F> {
        self.crossed.source()
    }

    fn p_alg(&self) -> &HomLie<F> {
        self.crossed.target()
    }

    fn l_alg(&self) -> &HomLie<F> {
        self.module.algebra()
    }

    fn shapes_consistent(&self) -> bool {
        let (m, n, p, l) = (
            self.module.dim_m(),
            self.n_alg().dim(),
            self.p_alg().dim(),
            self.l_alg().dim(),
        );
        self.chi.shape() == (n, m)
            && self.crossed.mu.shape() == (p, n)
            && self.pi.shape() == (l, p)
            && self.sigma.shape() == (p, l)
            && self.rho.shape() == (n, p)
    }

    pub fn validate(&self) -> CrossedExtensionReport {
        if !self.shapes_consistent() {
            return CrossedExtensionReport::default();
        }
        let (m, l) = (self.module.dim_m(), self.l_alg().dim());
        let mu = &self.crossed.mu;
        let image_mu = mu.image();
        let hom =
            |f: &Matrix<F>, a: &HomLie<F>, b: &HomLie<F>| morphism_report(f, a, b).map(|r| r.holds()).unwrap_or(false);
        let alpha_crossed = self.crossed.validate(Flavor::Alpha).map(|r| r.holds()).unwrap_or(false);
        let rho_section = image_mu.basis().iter().all(|b| &mu.apply(&self.rho.apply(b)) == b);
        let rho_hom_linear = image_mu
            .basis()
            .iter()
            .all(|b| self.rho.apply(&self.p_alg().twist(b)) == self.n_alg().twist(&self.rho.apply(b)));
        let module_matches = self.chi.rank() == m
            && (0..l).all(|x| {
                (0..m).all(|j| {
                    let induced = self.crossed.action.act(&self.sigma.column(x), &self.chi.column(j));
                    self.chi.solve(&induced).as_deref() == Some(self.module.act_basis(x, j))
                })
            });
        CrossedExtensionReport {
            exact_at_m: self.chi.rank() == m,
            exact_at_n: self.chi.image() == mu.kernel(),
            exact_at_p: image_mu == self.pi.kernel(),
            exact_at_l: self.pi.rank() == l,
            alpha_crossed,
            chi_morphism: hom(&self.chi, self.module.space(), self.n_alg()),
            pi_morphism: hom(&self.pi, self.p_alg(), self.l_alg()),
            sigma_section: self.pi.mul(&self.sigma).is_identity(),
            sigma_hom_linear: self.p_alg().alpha().mul(&self.sigma) == self.sigma.mul(self.l_alg().alpha()),
            rho_section,
            rho_hom_linear,
            module_matches,
        }
    }

    /// `[σ a, σ b] - σ[a, b]`
    fn curvature(&self, a: &[F], b: &[F]) -> Vec<F> {
        let p = self.p_alg();
        sub_vectors(
            &p.bracket(&self.sigma.apply(a), &self.sigma.apply(b)),
            &self.sigma.apply(&self.l_alg().bracket(a, b)),
        )
    }

    fn f_value(&self, a: &[F], b: &[F]) -> Vec<F> {
        self.rho.apply(&self.curvature(a, b))
    }

    /// `h_ξ(l₁, l₂, l₃)` with values in `N`:
    /// `Σ_cyclic f(α(l₁), [l₂, l₃]) + σ(α²(l₁))·f(l₂, l₃)`.
    pub fn h_value(&self, l1: &[F], l2: &[F], l3: &[F]) -> Vec<F> {
        let l = self.l_alg();
        let act = &self.crossed.action;
        let mut out = vec![F::zero(); self.n_alg().dim()];
        for (a, b, c) in [(l1, l2, l3), (l2, l3, l1), (l3, l1, l2)] {
            out = add_vectors(&out, &self.f_value(&l.twist(a), &l.bracket(b, c)));
            let twisted = self.sigma.apply(&l.twist(&l.twist(a)));
            out = add_vectors(&out, &act.act(&twisted, &self.f_value(b, c)));
        }
        out
    }

    pub fn with_sections(&self, sigma: Matrix<F>, rho: Matrix<F>) -> Self {
        AlphaCrossedExtension {
            sigma,
            rho,
            ..self.clone()
        }
    }

    /// Offsets `g: L → ker π` with `α_P g = g α_L` and `g(l)·χ(m) = 0`; adding one to `σ`
    /// keeps it a Hom-linear section inducing the same module structure.
    pub fn sigma_offsets(&self) -> Subspace<F> {
        let (m, p, l) = (self.module.dim_m(), self.p_alg().dim(), self.l_alg().dim());
        let act = &self.crossed.action;
        let residual = |g: &Matrix<F>| -> Vec<F> {
            let mut out = self.pi.mul(g).to_flat();
            out.extend(self.p_alg().alpha().mul(g).sub(&g.mul(self.l_alg().alpha())).to_flat());
            for x in 0..l {
                for j in 0..m {
                    out.extend(act.act(&g.column(x), &self.chi.column(j)));
                }
            }
            out
        };
        let probe = residual(&Matrix::zeros(p, l)).len();
        Matrix::from_linear_map(p * l, probe, |flat| {
            residual(&Matrix::from_flat(p, l, flat.to_vec()).expect("flat"))
        })
        .kernel()
    }

    /// Offsets `r: P → ker μ`, vanishing on the standard complement of `im μ` and
    /// equivariant on `im μ`; adding one to `ρ` keeps it a Hom-linear section of `μ`.
    pub fn rho_offsets(&self) -> Subspace<F> {
        let (n, p) = (self.n_alg().dim(), self.p_alg().dim());
        let mu = &self.crossed.mu;
        let image = mu.image();
        let complement = image.complement_indices();
        let residual = |r: &Matrix<F>| -> Vec<F> {
            let mut out = mu.mul(r).to_flat();
            for &c in &complement {
                out.extend(r.column(c));
            }
            for b in image.basis() {
                out.extend(sub_vectors(
                    &r.apply(&self.p_alg().twist(b)),
                    &self.n_alg().twist(&r.apply(b)),
                ));
            }
            out
        };
        let probe = residual(&Matrix::zeros(n, p)).len();
        Matrix::from_linear_map(n * p, probe, |flat| {
            residual(&Matrix::from_flat(n, p, flat.to_vec()).expect("flat"))
        })
        .kernel()
    }
}

/// Computes `h_ξ`, pulled back to `M` through `χ`, and checks that it is an α-equivariant
/// 3-cocycle.
pub fn eta<F: Field>(xi: &AlphaCrossedExtension<F>) -> Result<Eta<F>> {
    let report = xi.validate();
    if !report.holds() {
        return Err(Error::InvalidCrossedExtension(format!("{report:?}")));
    }
    let (m, n, l) = (xi.module.dim_m(), xi.n_alg().dim(), xi.l_alg().dim());
    let e = |i| unit_vector::<F>(l, i);
    let f = Cochain::from_basis_values(2, l, n, |t| xi.f_value(&e(t[0]), &e(t[1])));
    let h_n = Cochain::from_basis_values(3, l, n, |t| xi.h_value(&e(t[0]), &e(t[1]), &e(t[2])));
    let in_kernel = xi.crossed.mu.mul(h_n.values()).is_zero();
    if !in_kernel {
        return Err(Error::EtaOutsideKernel);
    }
    let cols: Vec<Vec<F>> = h_n
        .values()
        .columns()
        .iter()
        .map(|v| xi.chi.solve(v).expect("ker μ = im χ"))
        .collect();
    let h = Cochain::new(3, l, Matrix::from_columns(m, &cols)?)?;
    let equivariant = is_equivariant(&xi.module, &h);
    if !equivariant {
        return Err(Error::NotEquivariant);
    }
    let cocycle = differential(&xi.module, &h).is_zero();
    Ok(Eta {
        f,
        h,
        in_kernel,
        equivariant,
        cocycle,
    })
}

/// The perturbed sections used by trial `t`: with the offset basis `O` (σ-offsets, then
/// ρ-offsets) of size `K`, trial `t` adds `(t / K + 1)·O[t mod K]`, plus `O[(t+1) mod K]`
/// once `t ≥ K`.
pub fn trial_sections<F: Field>(xi: &AlphaCrossedExtension<F>, trial: usize) -> (Matrix<F>, Matrix<F>) {
    let (n, p, l) = (xi.n_alg().dim(), xi.p_alg().dim(), xi.l_alg().dim());
    let sig = xi.sigma_offsets();
    let rho = xi.rho_offsets();
    let mut offsets: Vec<(bool, Vec<F>)> = sig.basis().iter().map(|v| (true, v.clone())).collect();
    offsets.extend(rho.basis().iter().map(|v| (false, v.clone())));
    let k = offsets.len();
    let mut sigma = xi.sigma.clone();
    let mut rho_m = xi.rho.clone();
    if k == 0 {
        return (sigma, rho_m);
    }
    let mut apply = |idx: usize, scale: F| {
        let (is_sigma, v) = &offsets[idx];
        if *is_sigma {
            sigma = sigma.add(&Matrix::from_flat(p, l, v.clone()).expect("flat").scale(&scale));
        } else {
            rho_m = rho_m.add(&Matrix::from_flat(n, p, v.clone()).expect("flat").scale(&scale));
        }
    };
    apply(trial % k, F::from_i64((trial / k + 1) as i64));
    if trial >= k {
        apply((trial + 1) % k, F::one());
    }
    (sigma, rho_m)
}

/// Recomputes `h_ξ` for `trials` deterministic perturbations of `(σ, ρ)` and certifies
/// each difference from the base class as an explicit coboundary.
pub fn eta_section_independence<F: Field>(xi: &AlphaCrossedExtension<F>, trials: usize) -> Result<SectionTrials<F>> {
    let base = eta(xi)?;
    let mut certificates = Vec::with_capacity(trials);
    for t in 0..trials {
        let (sigma, rho) = trial_sections(xi, t);
        let perturbed = eta(&xi.with_sections(sigma, rho))?;
        let diff = perturbed.h.sub(&base.h);
        let cert = coboundary_preimage(&xi.module, &diff)?;
        debug_assert!(cert.as_ref().is_none_or(|b| differential(&xi.module, b) == diff));
        certificates.push(cert);
    }
    Ok(SectionTrials { certificates })
}

/// `(φ, ϕ): ξ → ξ'`: a morphism of the crossed modules with `φ χ = χ'` and `π' ϕ = π`.
pub fn is_crossed_extension_morphism<F: Field>(
    phi_n: &Matrix<F>,
    phi_p: &Matrix<F>,
    xi: &AlphaCrossedExtension<F>,
    other: &AlphaCrossedExtension<F>,
) -> Result<bool> {
    Ok(xi.module == other.module
        && is_crossed_morphism(phi_n, phi_p, &xi.crossed, &other.crossed)?
        && phi_n.mul(&xi.chi) == other.chi
        && other.pi.mul(phi_p) == xi.pi)
}

/// For a morphism `(φ, ϕ): ξ → ξ'`, the 2-cochain
/// `f̂(l₁, l₂) = (φ ρ - ρ' ϕ)([σ l₁, σ l₂] - σ[l₁, l₂])` (pulled back to `M`) and a flag
/// for `h_ξ - h_{ξ'} = d²f̂`, where `h_{ξ'}` is computed with the section `ϕ σ`.
pub fn morphism_certificate<F: Field>(
    phi_n: &Matrix<F>,
    phi_p: &Matrix<F>,
    xi: &AlphaCrossedExtension<F>,
    other: &AlphaCrossedExtension<F>,
) -> Result<(Cochain<F>, bool)> {
    if !is_crossed_extension_morphism(phi_n, phi_p, xi, other)? {
        return Err(Error::NotAMorphism("not a morphism of α-crossed extensions".into()));
    }
    let (m, l) = (xi.module.dim_m(), xi.l_alg().dim());
    let moved = other.with_sections(phi_p.mul(&xi.sigma), other.rho.clone());
    let h = eta(xi)?.h;
    let h_other = eta(&moved)?.h;
    let defect = phi_n.mul(&xi.rho).sub(&other.rho.mul(phi_p));
    let e = |i| unit_vector::<F>(l, i);
    let mut failed = false;
    let f_hat = Cochain::from_basis_values(2, l, m, |t| {
        let v = defect.apply(&xi.curvature(&e(t[0]), &e(t[1])));
        other.chi.solve(&v).unwrap_or_else(|| {
            failed = true;
            vec![F::zero(); m]
        })
    });
    if failed {
        return Err(Error::InvalidCrossedExtension("f̂ leaves ker μ'".into()));
    }
    let holds = h.sub(&h_other) == differential(&xi.module, &f_hat);
    Ok((f_hat, holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    /// L = ℚ² abelian with α = 0 acting on M = ℚ³ abelian with α = 0 by a₁·b₂ = b₂,
    /// a₂·b₁ = -b₂; μ(b₁) = a₁, μ(b₂) = a₂, μ(b₃) = 0.
    fn alpha_not_standard() -> CrossedModule<Rational> {
        let l = HomLie::abelian(2, Matrix::zeros(2, 2)).unwrap();
        let mut table = vec![v(&[0, 0, 0]); 6];
        table[1] = v(&[0, 1, 0]);
        table[3] = v(&[0, -1, 0]);
        let action = HomAction::module(l, Matrix::zeros(3, 3), table).unwrap();
        CrossedModule::new(action, Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]])).unwrap()
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
    fn alpha_crossed_but_not_crossed() {
        let cm = alpha_not_standard();
        assert!(cm.validate(Flavor::Alpha).unwrap().holds());
        assert!(!cm.validate(Flavor::Standard).unwrap().holds());
        assert!(!cm.validate_via_semidirect().unwrap());
    }

    #[test]
    fn ideal_inclusion_round_trips() {
        let two = HomLie::from_brackets(2, Matrix::identity(2), &[(0, 1, v(&[1, 0]))]).unwrap();
        let cm = CrossedModule::ideal_inclusion(two, &Subspace::from_spanning(2, &[v(&[1, 0])])).unwrap();
        assert!(cm.validate(Flavor::Standard).unwrap().holds());
        assert!(cm.validate_via_semidirect().unwrap());
        let c = functor_s(&cm).unwrap();
        assert!(c.validate().holds());
        assert!(functor_p(&c).unwrap().validate(Flavor::Standard).unwrap().holds());
        ps_isomorphism(&cm).unwrap();
        sp_isomorphism(&c).unwrap();
    }

    #[test]
    fn trivial_cat1() {
        let c = Cat1 {
            algebra: sl2(),
            sub: Subspace::full(3),
            s: Matrix::identity(3),
            t: Matrix::identity(3),
        };
        assert!(c.validate().holds());
        let cm = functor_p(&c).unwrap();
        assert_eq!(cm.source().dim(), 0);
        sp_isomorphism(&c).unwrap();
    }

    #[test]
    fn broken_cat1_is_flagged() {
        let mut c = Cat1 {
            algebra: sl2(),
            sub: Subspace::full(3),
            s: Matrix::identity(3),
            t: Matrix::identity(3),
        };
        c.s = Matrix::zeros(3, 3);
        assert!(!c.validate().s_retracts);
    }

    #[test]
    fn crossed_morphisms() {
        let cm = alpha_not_standard();
        assert!(is_crossed_morphism(&Matrix::identity(3), &Matrix::identity(2), &cm, &cm).unwrap());
        let scaled = Matrix::from_i64_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(!is_crossed_morphism(&scaled, &Matrix::identity(2), &cm, &cm).unwrap());
    }
}
