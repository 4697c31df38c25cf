//! Abelian (s-)extensions `M → E → L`: validation, sections, the correspondence with
//! 2-cocycles, equivalence, induced extensions, the Baer vector-space structure and the
//! five-term exact sequence.
//!
//! Extensions built here are in normal form: `E = M ⊕ L` as a vector space with the
//! basis of `M` first, `i(m) = (m, 0)`, `π(m, l) = l` and `σ(l) = (0, l)`.

use crate::action::{derivation_space, map_from_flat, HomAction};
use crate::algebra::{morphism_report, HomLie};
use crate::cohomology::{
    coboundaries, cochain_space, cocycles, cohomologous, is_cocycle, wedge_basis, wedge_power, Cochain,
};
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, sub_vectors, unit_vector, zero_vector, Matrix, Subspace};
use crate::scalar::Field;

/// `0 → M →ⁱ E →^π L → 0` with a designated Hom-linear section `σ` and the module
/// structure `module` of `L` on `M`. `s` records the twisting endomorphism for which
/// `[σ(x), i(m)] = i(s(x)·m)` is expected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension<F> {
    pub module: HomAction<F>,
    pub algebra: HomLie<F>,
    pub inclusion: Matrix<F>,
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
    pub s: Matrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ExtensionReport {
    pub algebra_valid: bool,
    pub base_valid: bool,
    pub module_valid: bool,
    pub inclusion_injective: bool,
    pub inclusion_morphism: bool,
    pub projection_surjective: bool,
    pub projection_morphism: bool,
    pub exact: bool,
    pub section_splits: bool,
    pub section_hom_linear: bool,
    pub s_condition: bool,
}

impl ExtensionReport {
    /// Every condition except the `s`-compatibility of the module structure.
    pub fn is_extension(&self) -> bool {
        self.algebra_valid
            && self.base_valid
            && self.module_valid
            && self.inclusion_injective
            && self.inclusion_morphism
            && self.projection_surjective
            && self.projection_morphism
            && self.exact
            && self.section_splits
            && self.section_hom_linear
    }

    pub fn is_s_extension(&self) -> bool {
        self.is_extension() && self.s_condition
    }
}

fn shape_ok<F: Field>(m: &Matrix<F>, rows: usize, cols: usize) -> bool {
    m.shape() == (rows, cols)
}

impl<F: Field> AbelianExtension<F> {
    pub fn base(&self) -> &HomLie<F> {
        self.module.algebra()
    }

    pub fn dim_m(&self) -> usize {
        self.module.dim_m()
    }

    pub fn dim_l(&self) -> usize {
        self.module.dim_l()
    }

    pub fn dim_e(&self) -> usize {
        self.algebra.dim()
    }

    fn shapes_consistent(&self) -> bool {
        let (m, e, l) = (self.dim_m(), self.dim_e(), self.dim_l());
        shape_ok(&self.inclusion, e, m)
            && shape_ok(&self.projection, l, e)
            && shape_ok(&self.section, e, l)
            && shape_ok(&self.s, l, l)
    }

    pub fn validate(&self) -> ExtensionReport {
        if !self.shapes_consistent() {
            return ExtensionReport::default();
        }
        let (m, e, l) = (self.dim_m(), self.dim_e(), self.dim_l());
        let big = &self.algebra;
        let base = self.base();
        let module_space = self.module.space();
        let inclusion_morphism = morphism_report(&self.inclusion, module_space, big)
            .map(|r| r.holds())
            .unwrap_or(false);
        let projection_morphism = morphism_report(&self.projection, big, base)
            .map(|r| r.holds())
            .unwrap_or(false);
        let image = self.inclusion.image();
        let kernel = self.projection.kernel();
        let section_splits = self.projection.mul(&self.section).is_identity();
        let section_hom_linear = big.alpha().mul(&self.section) == self.section.mul(base.alpha());
        let s_condition = (0..l).all(|x| {
            let sx = self.section.column(x);
            (0..m).all(|j| {
                let lhs = big.bracket(&sx, &self.inclusion.column(j));
                let rhs = self
                    .inclusion
                    .apply(&self.module.act(&self.s.apply(&unit_vector(l, x)), &unit_vector(m, j)));
                lhs == rhs
            })
        });
        ExtensionReport {
            algebra_valid: big.is_valid(),
            base_valid: base.is_valid(),
            module_valid: self.module.is_module(),
            inclusion_injective: self.inclusion.rank() == m,
            inclusion_morphism,
            projection_surjective: self.projection.rank() == l,
            projection_morphism,
            exact: image == kernel && e == m + l,
            section_splits,
            section_hom_linear,
            s_condition,
        }
    }

    fn require_extension(&self) -> Result<()> {
        let r = self.validate();
        if r.is_extension() {
            Ok(())
        } else {
            Err(Error::InvalidExtension(format!("{r:?}")))
        }
    }

    /// `i⁻¹(v)` for `v ∈ im i`.
    fn pull_back_to_kernel(&self, v: &[F]) -> Vec<F> {
        self.inclusion.solve(v).expect("value lies in the image of i")
    }

    /// `[σ x, σ y] - σ[x, y]`, an element of `ker π`.
    pub fn curvature(&self, x: &[F], y: &[F]) -> Vec<F> {
        let sx = self.section.apply(x);
        let sy = self.section.apply(y);
        sub_vectors(
            &self.algebra.bracket(&sx, &sy),
            &self.section.apply(&self.base().bracket(x, y)),
        )
    }

    /// The same extension with another section.
    pub fn with_section(&self, section: Matrix<F>) -> AbelianExtension<F> {
        AbelianExtension {
            section,
            ..self.clone()
        }
    }

    /// Equivariant maps `t: L → M` (flattened); `σ + i∘t` runs over all Hom-linear
    /// sections.
    pub fn section_offsets(&self) -> Subspace<F> {
        let (m, l) = (self.dim_m(), self.dim_l());
        let alpha_m = self.module.alpha_m();
        let alpha_l = self.base().alpha();
        Matrix::from_linear_map(m * l, m * l, |flat| {
            let t = map_from_flat(m, l, flat);
            alpha_m.mul(&t).sub(&t.mul(alpha_l)).to_flat()
        })
        .kernel()
    }

    pub fn offset_section(&self, t: &Matrix<F>) -> Matrix<F> {
        self.section.add(&self.inclusion.mul(t))
    }
}

/// The action `x·m = i⁻¹[σ(x), i(m)]` induced by the extension.
pub fn action_from_extension<F: Field>(ext: &AbelianExtension<F>) -> Result<HomAction<F>> {
    ext.require_extension()?;
    HomAction::from_fn(ext.base().clone(), ext.module.space().clone(), |x, j| {
        let v = ext.algebra.bracket(&ext.section.column(x), &ext.inclusion.column(j));
        ext.pull_back_to_kernel(&v)
    })
}

/// A Hom-linear `σ` with `π σ = Id` and `α_X σ = σ α_Y`, if one exists.
pub fn find_section<F: Field>(pi: &Matrix<F>, alpha_x: &Matrix<F>, alpha_y: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let (y, x) = pi.shape();
    if alpha_x.shape() != (x, x) || alpha_y.shape() != (y, y) {
        return Err(Error::dims("section twists", x, alpha_x.rows()));
    }
    if pi.rank() != y {
        return Err(Error::NotSurjective);
    }
    // Unknown σ is x × y, flattened row-major.
    let system = Matrix::from_linear_map(x * y, y * y + x * y, |flat| {
        let s = Matrix::from_flat(x, y, flat.to_vec()).expect("flat length");
        let mut out = pi.mul(&s).to_flat();
        out.extend(alpha_x.mul(&s).sub(&s.mul(alpha_y)).to_flat());
        out
    });
    let mut rhs = Matrix::<F>::identity(y).to_flat();
    rhs.extend(zero_vector(x * y));
    Ok(system
        .solve(&rhs)
        .map(|flat| Matrix::from_flat(x, y, flat).expect("flat length")))
}

/// `M ⊕ L` with bracket `(α(l)·m' - α(l')·m + w(l, l'), [l, l'])` and the given `s`-
/// twisted action term; `s = α_L` is the α-extension attached to a 2-cocycle.
fn normal_form<F: Field>(module: &HomAction<F>, s: &Matrix<F>, w: &Cochain<F>) -> Result<AbelianExtension<F>> {
    let l = module.algebra();
    let (m, n) = (module.dim_m(), module.dim_l());
    let bracket = |u: &[F], v: &[F]| -> Vec<F> {
        let (m1, x1) = (&u[..m], &u[m..]);
        let (m2, x2) = (&v[..m], &v[m..]);
        let mut top = module.act(&s.apply(x1), m2);
        top = sub_vectors(&top, &module.act(&s.apply(x2), m1));
        top = add_vectors(&top, &w.evaluate(&[x1.to_vec(), x2.to_vec()]));
        top.extend(l.bracket(x1, x2));
        top
    };
    let alpha = module.alpha_m().block_diag(l.alpha());
    let algebra = HomLie::from_fn(m + n, alpha, |i, j| {
        bracket(&unit_vector(m + n, i), &unit_vector(m + n, j))
    })?;
    let inclusion = Matrix::identity(m).vstack(&Matrix::zeros(n, m));
    let projection = Matrix::zeros(n, m).hstack(&Matrix::identity(n));
    let section = projection.transpose();
    Ok(AbelianExtension {
        module: module.clone(),
        algebra,
        inclusion,
        projection,
        section,
        s: s.clone(),
    })
}

/// `M ⋊_s L` as an extension.
pub fn trivial_extension<F: Field>(module: &HomAction<F>, s: &Matrix<F>) -> Result<AbelianExtension<F>> {
    module.require_module()?;
    normal_form(module, s, &Cochain::zero(2, module.dim_l(), module.dim_m()))
}

/// The α-extension `M ⊕_w L` of a 2-cocycle.
pub fn extension_from_cocycle<F: Field>(module: &HomAction<F>, w: &Cochain<F>) -> Result<AbelianExtension<F>> {
    module.require_module()?;
    if w.degree() != 2 || !is_cocycle(module, w)? {
        return Err(Error::NotACocycle);
    }
    let ext = normal_form(module, module.algebra().alpha(), w)?;
    debug_assert!(ext.validate().is_s_extension());
    Ok(ext)
}

/// `w(x, y) = i⁻¹([σ x, σ y] - σ[x, y])` with the stored section.
pub fn cocycle_from_extension<F: Field>(ext: &AbelianExtension<F>) -> Result<Cochain<F>> {
    ext.require_extension()?;
    let (m, l) = (ext.dim_m(), ext.dim_l());
    Ok(Cochain::from_basis_values(2, l, m, |t| {
        let c = ext.curvature(&unit_vector(l, t[0]), &unit_vector(l, t[1]));
        ext.pull_back_to_kernel(&c)
    }))
}

/// `Ψ(m, l) = i(m) + σ(l)`, the linear isomorphism from the normal form onto `E`.
fn normal_coordinates<F: Field>(ext: &AbelianExtension<F>) -> Matrix<F> {
    ext.inclusion.hstack(&ext.section)
}

fn same_boundary<F: Field>(a: &AbelianExtension<F>, b: &AbelianExtension<F>) -> Result<()> {
    if a.module != b.module {
        return Err(Error::BoundaryMismatch("different modules".into()));
    }
    if a.s != b.s {
        return Err(Error::BoundaryMismatch("different twisting maps".into()));
    }
    Ok(())
}

/// Checks that `Φ: E → E'` is a morphism with `Φ i = i'` and `π' Φ = π`.
pub fn is_equivalence<F: Field>(phi: &Matrix<F>, ext: &AbelianExtension<F>, other: &AbelianExtension<F>) -> bool {
    phi.shape() == (other.dim_e(), ext.dim_e())
        && morphism_report(phi, &ext.algebra, &other.algebra)
            .map(|r| r.holds())
            .unwrap_or(false)
        && phi.mul(&ext.inclusion) == other.inclusion
        && other.projection.mul(phi) == ext.projection
}

/// An equivalence `Φ: E → E'` of α-extensions, or `None` when their cocycles are not
/// cohomologous. In normal coordinates `Φ(m, l) = (m + θ(l), l)` with `w - w' = d¹θ`.
pub fn equivalent_extensions<F: Field>(
    ext: &AbelianExtension<F>,
    other: &AbelianExtension<F>,
) -> Result<Option<Matrix<F>>> {
    same_boundary(ext, other)?;
    let w = cocycle_from_extension(ext)?;
    let w2 = cocycle_from_extension(other)?;
    let Some(theta) = cohomologous(&ext.module, &w, &w2)? else {
        return Ok(None);
    };
    let (m, l) = (ext.dim_m(), ext.dim_l());
    let shear = Matrix::identity(m)
        .hstack(theta.values())
        .vstack(&Matrix::zeros(l, m).hstack(&Matrix::identity(l)));
    let to_normal = normal_coordinates(ext).inverse().expect("i and σ span E");
    let phi = normal_coordinates(other).mul(&shear).mul(&to_normal);
    debug_assert!(is_equivalence(&phi, ext, other));
    Ok(Some(phi))
}

/// Brackets and twist of the subalgebra spanned by the columns of an injective `j`,
/// written in the coordinates given by `j`.
fn transport<F: Field>(ambient: &HomLie<F>, j: &Matrix<F>) -> Result<HomLie<F>> {
    let k = j.cols();
    let cols = j.columns();
    let coords = |v: Vec<F>| {
        j.solve(&v)
            .ok_or_else(|| Error::Invalid("span is not a subalgebra".into()))
    };
    let mut table = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            table.push(coords(ambient.bracket(&cols[a], &cols[b]))?);
        }
    }
    let alpha_cols: Result<Vec<Vec<F>>> = cols.iter().map(|c| coords(ambient.twist(c))).collect();
    HomLie::new(k, Matrix::from_columns(k, &alpha_cols?)?, table)
}

/// `E_γ = E ×_L L'`, written as `M ⊕ L'` through `(m, l') ↦ (i(m) + σγ(l'), l')`.
pub fn backward_induced<F: Field>(
    ext: &AbelianExtension<F>,
    gamma: &Matrix<F>,
    source: &HomLie<F>,
    s_source: &Matrix<F>,
) -> Result<AbelianExtension<F>> {
    ext.require_extension()?;
    let (m, l, l2) = (ext.dim_m(), ext.dim_l(), source.dim());
    if gamma.shape() != (l, l2) || s_source.shape() != (l2, l2) {
        return Err(Error::dims("backward induction map", l, gamma.rows()));
    }
    if !morphism_report(gamma, source, ext.base())?.holds() {
        return Err(Error::NotAMorphism("γ".into()));
    }
    if gamma.mul(s_source) != ext.s.mul(gamma) {
        return Err(Error::InvalidExtension(
            "γ does not intertwine the twisting maps".into(),
        ));
    }
    let product = ext.algebra.direct_sum(source);
    let e = ext.dim_e();
    let top = ext.inclusion.hstack(&ext.section.mul(gamma));
    let bottom = Matrix::zeros(l2, m).hstack(&Matrix::identity(l2));
    let j = top.vstack(&bottom);
    let algebra = transport(&product, &j)?;
    debug_assert_eq!(j.rows(), e + l2);
    let module = ext.module.pullback(gamma, source)?;
    let inclusion = Matrix::identity(m).vstack(&Matrix::zeros(l2, m));
    let projection = Matrix::zeros(l2, m).hstack(&Matrix::identity(l2));
    let section = projection.transpose();
    Ok(AbelianExtension {
        module,
        algebra,
        inclusion,
        projection,
        section,
        s: s_source.clone(),
    })
}

/// A morphism `ψ: L' → E` with `π ψ = γ`, searched among `σγ + i∘t`.
pub fn lift_along<F: Field>(
    ext: &AbelianExtension<F>,
    gamma: &Matrix<F>,
    source: &HomLie<F>,
) -> Result<Option<Matrix<F>>> {
    ext.require_extension()?;
    let (m, l2) = (ext.dim_m(), source.dim());
    let base = ext.section.mul(gamma);
    let e = &ext.algebra;
    let residual = |t: &Matrix<F>| -> Vec<F> {
        let psi = base.add(&ext.inclusion.mul(t));
        let cols = psi.columns();
        let mut out = Vec::new();
        for a in 0..l2 {
            for b in a + 1..l2 {
                out.extend(sub_vectors(
                    &e.bracket(&cols[a], &cols[b]),
                    &psi.apply(source.basis_bracket(a, b)),
                ));
            }
        }
        out.extend(e.alpha().mul(&psi).sub(&psi.mul(source.alpha())).to_flat());
        out
    };
    // The residual is affine in t: residual(t) = A t + residual(0).
    let r0 = residual(&Matrix::zeros(m, l2));
    let a = Matrix::from_linear_map(m * l2, r0.len(), |flat| {
        sub_vectors(&residual(&map_from_flat(m, l2, flat)), &r0)
    });
    let rhs: Vec<F> = r0.iter().map(F::neg_ref).collect();
    Ok(a.solve(&rhs)
        .map(|t| base.add(&ext.inclusion.mul(&map_from_flat(m, l2, &t)))))
}

/// A Hom-Lie section of `π` that is a morphism, if the extension splits.
pub fn splitting<F: Field>(ext: &AbelianExtension<F>) -> Result<Option<Matrix<F>>> {
    lift_along(ext, &Matrix::identity(ext.dim_l()), ext.base())
}

/// Smallest `k ≤ dim L + 1` with `s = α_L^k`.
fn twist_exponent<F: Field>(ext: &AbelianExtension<F>) -> Result<u32> {
    let alpha = ext.base().alpha();
    let mut power = Matrix::identity(ext.dim_l());
    for k in 0..=(ext.dim_l() as u32 + 1) {
        if power == ext.s {
            return Ok(k);
        }
        power = power.mul(alpha);
    }
    Err(Error::UnsupportedTwist(format!("{:?}", ext.s)))
}

/// `^δE = (M' ⋊_{s'} E) / T` with `T = {(δ(m), -i(m))}`, where `E` acts on `M'` through
/// `π` and `s' = α_E^k` for `s = α_L^k`. Written as `M' ⊕ L` through
/// `(m', l) ↦ [(m', σ(l))]`.
pub fn forward_induced<F: Field>(
    ext: &AbelianExtension<F>,
    target: &HomAction<F>,
    delta: &Matrix<F>,
) -> Result<AbelianExtension<F>> {
    ext.require_extension()?;
    target.require_module()?;
    let (m, l, e) = (ext.dim_m(), ext.dim_l(), ext.dim_e());
    let m2 = target.dim_m();
    if target.algebra() != ext.base() {
        return Err(Error::BoundaryMismatch(
            "target module lives over another algebra".into(),
        ));
    }
    if delta.shape() != (m2, m) {
        return Err(Error::dims("δ", m2, delta.rows()));
    }
    let delta_is_module_map = delta.mul(ext.module.alpha_m()) == target.alpha_m().mul(delta)
        && (0..l).all(|x| {
            (0..m).all(|j| {
                let xe = unit_vector(l, x);
                delta.apply(&ext.module.act(&xe, &unit_vector(m, j))) == target.act(&xe, &delta.column(j))
            })
        });
    if !delta_is_module_map {
        return Err(Error::NotAMorphism("δ is not a module morphism".into()));
    }
    let k = twist_exponent(ext)?;
    let s_e = ext.algebra.alpha().pow(k);
    let over_e = target.pullback(&ext.projection, &ext.algebra)?;
    let semi = crate::action::semidirect(&over_e, &s_e)?;
    let t_basis = delta.vstack(&ext.inclusion.neg());
    let t_space = t_basis.image();
    if !semi.algebra.is_ideal(&t_space) {
        return Err(Error::TNotIdeal);
    }
    // Coordinates modulo T against the normal-form representatives.
    let j = Matrix::identity(m2)
        .vstack(&Matrix::zeros(e, m2))
        .hstack(&Matrix::zeros(m2, l).vstack(&ext.section));
    let full = j.hstack(&t_basis);
    let reduce = |v: &[F]| -> Vec<F> {
        let c = full
            .solve(v)
            .expect("representatives and T span the semidirect product");
        c[..m2 + l].to_vec()
    };
    let jcols = j.columns();
    let algebra = HomLie::from_fn(
        m2 + l,
        Matrix::from_linear_map(m2 + l, m2 + l, |v| reduce(&semi.algebra.twist(&j.apply(v)))),
        |a, b| reduce(&semi.algebra.bracket(&jcols[a], &jcols[b])),
    )?;
    let inclusion = Matrix::identity(m2).vstack(&Matrix::zeros(l, m2));
    let projection = Matrix::zeros(l, m2).hstack(&Matrix::identity(l));
    let section = projection.transpose();
    Ok(AbelianExtension {
        module: target.clone(),
        algebra,
        inclusion,
        projection,
        section,
        s: ext.s.clone(),
    })
}

/// An `s'`-derivation `ψ': E → M'` (E acting through π) with `ψ' ∘ i = δ`, if any.
pub fn derivation_extending<F: Field>(
    ext: &AbelianExtension<F>,
    target: &HomAction<F>,
    delta: &Matrix<F>,
) -> Result<Option<Matrix<F>>> {
    ext.require_extension()?;
    let k = twist_exponent(ext)?;
    let s_e = ext.algebra.alpha().pow(k);
    let over_e = target.pullback(&ext.projection, &ext.algebra)?;
    let (m2, e) = (target.dim_m(), ext.dim_e());
    let der = derivation_space(&over_e, &s_e)?;
    // ψ' = Σ c_k D_k; solve (Σ c_k D_k) i = δ.
    let basis: Vec<Matrix<F>> = der.basis().iter().map(|b| map_from_flat(m2, e, b)).collect();
    let cols: Vec<Vec<F>> = basis.iter().map(|d| d.mul(&ext.inclusion).to_flat()).collect();
    let system = Matrix::from_columns(m2 * ext.dim_m(), &cols)?;
    Ok(system.solve(&delta.to_flat()).map(|c| {
        let mut psi = Matrix::zeros(m2, e);
        for (ck, d) in c.iter().zip(&basis) {
            psi = psi.add(&d.scale(ck));
        }
        psi
    }))
}

/// `L ⊕ L` acting on `M ⊕ M'` componentwise.
fn direct_sum_module<F: Field>(a: &HomAction<F>, b: &HomAction<F>) -> Result<HomAction<F>> {
    let algebra = a.algebra().direct_sum(b.algebra());
    let alpha = a.alpha_m().block_diag(b.alpha_m());
    let (n, m) = (a.dim_l(), a.dim_m());
    let (n2, m2) = (b.dim_l(), b.dim_m());
    let mut table = Vec::with_capacity((n + n2) * (m + m2));
    for x in 0..n + n2 {
        for j in 0..m + m2 {
            let mut v = zero_vector(m + m2);
            if x < n && j < m {
                v[..m].clone_from_slice(a.act_basis(x, j));
            } else if x >= n && j >= m {
                v[m..].clone_from_slice(b.act_basis(x - n, j - m));
            }
            table.push(v);
        }
    }
    HomAction::module(algebra, alpha, table)
}

/// `E ⊕ E'` as an extension of `L ⊕ L'` by `M ⊕ M'` (basis of `E` first, then `E'`).
pub fn direct_sum_extension<F: Field>(a: &AbelianExtension<F>, b: &AbelianExtension<F>) -> Result<AbelianExtension<F>> {
    let module = direct_sum_module(&a.module, &b.module)?;
    let sum = a.algebra.direct_sum(&b.algebra);
    let inclusion = a.inclusion.block_diag(&b.inclusion);
    let projection = a.projection.block_diag(&b.projection);
    let section = a.section.block_diag(&b.section);
    Ok(AbelianExtension {
        module,
        algebra: sum,
        inclusion,
        projection,
        section,
        s: a.s.block_diag(&b.s),
    })
}

/// `(E) + (E') = ^∇((E ⊕ E')_Δ)`.
pub fn baer_sum<F: Field>(a: &AbelianExtension<F>, b: &AbelianExtension<F>) -> Result<AbelianExtension<F>> {
    same_boundary(a, b)?;
    let (m, l) = (a.dim_m(), a.dim_l());
    let sum = direct_sum_extension(a, b)?;
    let diagonal = Matrix::identity(l).vstack(&Matrix::identity(l));
    let pulled = backward_induced(&sum, &diagonal, a.base(), &a.s)?;
    let codiagonal = Matrix::identity(m).hstack(&Matrix::identity(m));
    forward_induced(&pulled, &a.module, &codiagonal)
}

/// `k·(E) = ^{k Id_M}E`.
pub fn baer_scalar<F: Field>(ext: &AbelianExtension<F>, k: &F) -> Result<AbelianExtension<F>> {
    forward_induced(ext, &ext.module, &Matrix::scalar(ext.dim_m(), k.clone()))
}

/// Baer sum through cocycles: the α-extension of `w_E + w_{E'}`.
pub fn baer_sum_cocycle<F: Field>(a: &AbelianExtension<F>, b: &AbelianExtension<F>) -> Result<AbelianExtension<F>> {
    same_boundary(a, b)?;
    require_alpha(a)?;
    let w = cocycle_from_extension(a)?.add(&cocycle_from_extension(b)?);
    extension_from_cocycle(&a.module, &w)
}

pub fn baer_scalar_cocycle<F: Field>(ext: &AbelianExtension<F>, k: &F) -> Result<AbelianExtension<F>> {
    require_alpha(ext)?;
    extension_from_cocycle(&ext.module, &cocycle_from_extension(ext)?.scale(k))
}

fn require_alpha<F: Field>(ext: &AbelianExtension<F>) -> Result<()> {
    if &ext.s != ext.base().alpha() {
        return Err(Error::UnsupportedTwist("cocycle arithmetic needs s = α".into()));
    }
    Ok(())
}

/// `N →^ξ E →^π L` with `N` an ideal (not necessarily abelian) and a Hom-linear
/// section of `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence<F> {
    pub kernel: HomLie<F>,
    pub algebra: HomLie<F>,
    pub base: HomLie<F>,
    pub inclusion: Matrix<F>,
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

impl<F: Field> ShortExactSequence<F> {
    pub fn from_extension(ext: &AbelianExtension<F>) -> Self {
        ShortExactSequence {
            kernel: ext.module.space().clone(),
            algebra: ext.algebra.clone(),
            base: ext.base().clone(),
            inclusion: ext.inclusion.clone(),
            projection: ext.projection.clone(),
            section: ext.section.clone(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let (n, e, l) = (self.kernel.dim(), self.algebra.dim(), self.base.dim());
        shape_ok(&self.inclusion, e, n)
            && shape_ok(&self.projection, l, e)
            && shape_ok(&self.section, e, l)
            && self.kernel.is_valid()
            && self.algebra.is_valid()
            && self.base.is_valid()
            && morphism_report(&self.inclusion, &self.kernel, &self.algebra)
                .map(|r| r.holds())
                .unwrap_or(false)
            && morphism_report(&self.projection, &self.algebra, &self.base)
                .map(|r| r.holds())
                .unwrap_or(false)
            && self.inclusion.rank() == n
            && self.projection.rank() == l
            && self.inclusion.image() == self.projection.kernel()
            && self.projection.mul(&self.section).is_identity()
            && self.algebra.alpha().mul(&self.section) == self.section.mul(self.base.alpha())
    }

    /// `ab(E) = E / [N, N]` as an extension of `L` by `N^ab`, where `[N, N]` is closed to
    /// an ideal of `E`. Returns the quotient algebra, its projection from `E` and the
    /// image of `N` in it.
    pub fn abelianisation(&self) -> (HomLie<F>, Matrix<F>, Subspace<F>) {
        let cols = self.inclusion.columns();
        let mut brackets = Vec::new();
        for a in &cols {
            for b in &cols {
                brackets.push(self.algebra.bracket(a, b));
            }
        }
        let ideal = self
            .algebra
            .ideal_closure(&Subspace::from_spanning(self.algebra.dim(), &brackets));
        let (quotient, projection) = self.algebra.quotient(&ideal).expect("closure is an ideal");
        let image = self.inclusion.image().image_under(&projection);
        (quotient, projection, image)
    }
}

/// Dimensions and linear maps of
/// `0 → Der_α(L, A) → Der_α(E, A) → Hom(N^ab, A) → H²_α(L, A) → H²_α(E, A)`
/// with exactness verdicts at each spot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveTermReport<F> {
    pub der_l_dim: usize,
    pub der_e_dim: usize,
    pub hom_dim: usize,
    pub h2_l_dim: usize,
    pub h2_e_dim: usize,
    /// `Der(π)`: flattened `A × L` maps to flattened `A × E` maps.
    pub der_pi: Matrix<F>,
    /// `ζ(d) = d ∘ ξ`
    pub zeta: Matrix<F>,
    /// `ϑ*(f) = f ∘ ξ⁻¹ ∘ ([σ-, σ-] - σ[-, -])`, into flattened 2-cochains on `L`.
    pub theta_star: Matrix<F>,
    /// `π*(w) = w ∘ (π ∧ π)`
    pub pi_star: Matrix<F>,
    pub injective_at_der_l: bool,
    pub exact_at_der_e: bool,
    pub exact_at_hom: bool,
    pub exact_at_h2_l: bool,
}

impl<F> FiveTermReport<F> {
    pub fn all_exact(&self) -> bool {
        self.injective_at_der_l && self.exact_at_der_e && self.exact_at_hom && self.exact_at_h2_l
    }
}

/// The space `Hom(N^ab, A)` of linear `f: N → A` with `f α_N = α_A f` and
/// `f([e, n]) = α_L(π e)·f(n)` for all `e ∈ E`, `n ∈ N` (these vanish on `[N, N]`).
pub fn kernel_homs<F: Field>(seq: &ShortExactSequence<F>, module: &HomAction<F>) -> Subspace<F> {
    let (a, n, e) = (module.dim_m(), seq.kernel.dim(), seq.algebra.dim());
    let xi_cols = seq.inclusion.columns();
    let residual = |f: &Matrix<F>| -> Vec<F> {
        let mut out = f.mul(seq.kernel.alpha()).sub(&module.alpha_m().mul(f)).to_flat();
        for x in 0..e {
            let ex = unit_vector(e, x);
            let twisted = seq.base.twist(&seq.projection.apply(&ex));
            for (j, col) in xi_cols.iter().enumerate() {
                let bracket = seq.algebra.bracket(&ex, col);
                let in_n = seq.inclusion.solve(&bracket).expect("N is an ideal");
                out.extend(sub_vectors(&f.apply(&in_n), &module.act(&twisted, &f.column(j))));
            }
        }
        out
    };
    let probe = residual(&Matrix::zeros(a, n)).len();
    Matrix::from_linear_map(a * n, probe, |flat| residual(&map_from_flat(a, n, flat))).kernel()
}

/// The 2-cochain `ξ⁻¹([σx, σy] - σ[x, y])` with values in `N`, as a `dim N × C(dim L, 2)`
/// matrix.
fn kernel_curvature<F: Field>(seq: &ShortExactSequence<F>) -> Matrix<F> {
    let l = seq.base.dim();
    let cols: Vec<Vec<F>> = wedge_basis(l, 2)
        .iter()
        .map(|t| {
            let (x, y) = (seq.section.column(t[0]), seq.section.column(t[1]));
            let c = sub_vectors(
                &seq.algebra.bracket(&x, &y),
                &seq.section
                    .apply(&seq.base.bracket(&unit_vector(l, t[0]), &unit_vector(l, t[1]))),
            );
            seq.inclusion.solve(&c).expect("curvature lies in N")
        })
        .collect();
    Matrix::from_columns(seq.kernel.dim(), &cols).expect("curvature shape")
}

/// `ϑ*(f)` as a 2-cochain on `L`.
pub fn transgression<F: Field>(seq: &ShortExactSequence<F>, f: &Matrix<F>) -> Cochain<F> {
    Cochain::new(2, seq.base.dim(), f.mul(&kernel_curvature(seq))).expect("wedge shape")
}

/// Image of a flattened subspace under a linear map given on the same flattening.
fn map_subspace<F: Field>(s: &Subspace<F>, m: &Matrix<F>) -> Subspace<F> {
    s.image_under(m)
}

pub fn five_term_report<F: Field>(seq: &ShortExactSequence<F>, module: &HomAction<F>) -> Result<FiveTermReport<F>> {
    if !seq.is_valid() {
        return Err(Error::InvalidExtension("short exact sequence".into()));
    }
    if module.algebra() != &seq.base {
        return Err(Error::BoundaryMismatch("module lives over another algebra".into()));
    }
    module.require_module()?;
    let (a, n, e, l) = (module.dim_m(), seq.kernel.dim(), seq.algebra.dim(), seq.base.dim());
    let over_e = module.pullback(&seq.projection, &seq.algebra)?;

    let der_l = derivation_space(module, seq.base.alpha())?;
    let der_e = derivation_space(&over_e, seq.algebra.alpha())?;
    let homs = kernel_homs(seq, module);

    let der_pi = Matrix::from_linear_map(a * l, a * e, |flat| {
        map_from_flat(a, l, flat).mul(&seq.projection).to_flat()
    });
    let zeta = Matrix::from_linear_map(a * e, a * n, |flat| {
        map_from_flat(a, e, flat).mul(&seq.inclusion).to_flat()
    });
    let curvature = kernel_curvature(seq);
    let theta_star = Matrix::from_linear_map(a * n, a * wedge_basis(l, 2).len(), |flat| {
        map_from_flat(a, n, flat).mul(&curvature).to_flat()
    });
    let pi_wedge = wedge_power(&seq.projection, 2);
    let c2_l = wedge_basis(l, 2).len();
    let pi_star = Matrix::from_linear_map(a * c2_l, a * pi_wedge.cols(), |flat| {
        Matrix::from_flat(a, c2_l, flat.to_vec())
            .expect("flat length")
            .mul(&pi_wedge)
            .to_flat()
    });

    // 0 → Der(L) → Der(E)
    let image_der_pi = map_subspace(&der_l, &der_pi);
    let injective_at_der_l = image_der_pi.dim() == der_l.dim() && der_e.contains(&image_der_pi);

    // ker ζ = im Der(π) inside Der(E)
    let ker_zeta = der_e.intersection(&zeta.kernel())?;
    let image_zeta = map_subspace(&der_e, &zeta);
    let exact_at_der_e = ker_zeta == image_der_pi && homs.contains(&image_zeta);

    // ker ϑ* = im ζ inside Hom(N^ab, A)
    let b2_l = coboundaries(module, 2);
    let ker_theta = homs.intersection(&b2_l.preimage_under(&theta_star))?;
    let z2_l = cocycles(module, 2);
    let image_theta = map_subspace(&homs, &theta_star);
    let exact_at_hom = ker_theta == image_zeta && z2_l.contains(&image_theta);

    // ker π* = im ϑ* in H²(L), compared as subspaces of Z²(L) containing B²(L).
    let b2_e = coboundaries(&over_e, 2);
    let ker_pi_star = z2_l.intersection(&b2_e.preimage_under(&pi_star))?;
    let exact_at_h2_l = ker_pi_star == image_theta.sum(&b2_l)?;

    let h2_l = z2_l.dim() - b2_l.dim();
    let h2_e = cocycles(&over_e, 2).dim() - b2_e.dim();
    debug_assert!(cochain_space(module, 2).space.contains(&z2_l));
    Ok(FiveTermReport {
        der_l_dim: der_l.dim(),
        der_e_dim: der_e.dim(),
        hom_dim: homs.dim(),
        h2_l_dim: h2_l,
        h2_e_dim: h2_e,
        der_pi,
        zeta,
        theta_star,
        pi_star,
        injective_at_der_l,
        exact_at_der_e,
        exact_at_hom,
        exact_at_h2_l,
    })
}

/// `w ∘ (π ∧ π)`
pub fn pullback_cocycle<F: Field>(w: &Cochain<F>, pi: &Matrix<F>) -> Cochain<F> {
    w.precompose(pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn plane_trivial() -> HomAction<Rational> {
        let l = HomLie::abelian(2, Matrix::identity(2)).unwrap();
        HomAction::trivial(l, Matrix::identity(1)).unwrap()
    }

    fn heisenberg_cocycle() -> Cochain<Rational> {
        Cochain::new(2, 2, Matrix::from_i64_rows(&[&[1]])).unwrap()
    }

    #[test]
    fn heisenberg_extension() {
        let act = plane_trivial();
        let ext = extension_from_cocycle(&act, &heisenberg_cocycle()).unwrap();
        assert!(ext.validate().is_s_extension());
        // Basis z, e, f with [e, f] = z.
        assert_eq!(ext.algebra.basis_bracket(1, 2), v(&[1, 0, 0]).as_slice());
        assert_eq!(cocycle_from_extension(&ext).unwrap(), heisenberg_cocycle());
        assert!(splitting(&ext).unwrap().is_none());
    }

    #[test]
    fn zero_cocycle_gives_the_semidirect_product() {
        let act = plane_trivial();
        let ext = extension_from_cocycle(&act, &Cochain::zero(2, 2, 1)).unwrap();
        assert_eq!(ext, trivial_extension(&act, &Matrix::identity(2)).unwrap());
        assert!(splitting(&ext).unwrap().is_some());
    }

    #[test]
    fn broken_exactness_is_reported() {
        let act = plane_trivial();
        let mut ext = extension_from_cocycle(&act, &heisenberg_cocycle()).unwrap();
        ext.inclusion = Matrix::from_i64_rows(&[&[1], &[1], &[0]]);
        let r = ext.validate();
        assert!(!r.exact);
        assert!(!r.is_extension());
    }

    #[test]
    fn section_counterexample() {
        let pi = Matrix::<Rational>::from_i64_rows(&[&[0, 1]]);
        let alpha_x = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let alpha_y = Matrix::zeros(1, 1);
        assert_eq!(find_section(&pi, &alpha_x, &alpha_y).unwrap(), None);
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(find_section(&id, &id, &id).unwrap(), Some(id.clone()));
        let not_onto = Matrix::<Rational>::zeros(1, 2);
        assert_eq!(
            find_section(&not_onto, &id, &Matrix::identity(1)),
            Err(Error::NotSurjective)
        );
    }

    #[test]
    fn equivalence_through_coboundaries() {
        let act = plane_trivial();
        let w = heisenberg_cocycle();
        let ext = extension_from_cocycle(&act, &w).unwrap();
        let zero = extension_from_cocycle(&act, &Cochain::zero(2, 2, 1)).unwrap();
        assert!(equivalent_extensions(&ext, &zero).unwrap().is_none());
        let phi = equivalent_extensions(&ext, &ext).unwrap().unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn baer_on_heisenberg() {
        let act = plane_trivial();
        let ext = extension_from_cocycle(&act, &heisenberg_cocycle()).unwrap();
        let doubled = baer_sum(&ext, &ext).unwrap();
        assert!(doubled.validate().is_s_extension());
        assert_eq!(
            cocycle_from_extension(&doubled).unwrap(),
            heisenberg_cocycle().scale(&q(2))
        );
        let neg = baer_scalar(&ext, &q(-1)).unwrap();
        let cancelled = baer_sum(&ext, &neg).unwrap();
        let zero = trivial_extension(&act, &Matrix::identity(2)).unwrap();
        assert!(equivalent_extensions(&cancelled, &zero).unwrap().is_some());
    }

    #[test]
    fn induced_extensions_split_when_expected() {
        let act = plane_trivial();
        let ext = extension_from_cocycle(&act, &heisenberg_cocycle()).unwrap();
        let zero_gamma = Matrix::zeros(2, 2);
        let l = ext.base().clone();
        let pulled = backward_induced(&ext, &zero_gamma, &l, &Matrix::identity(2)).unwrap();
        assert!(splitting(&pulled).unwrap().is_some());
        assert!(lift_along(&ext, &zero_gamma, &l).unwrap().is_some());
        assert!(lift_along(&ext, &Matrix::identity(2), &l).unwrap().is_none());

        let pushed = forward_induced(&ext, &act, &Matrix::zeros(1, 1)).unwrap();
        assert!(splitting(&pushed).unwrap().is_some());
        assert!(derivation_extending(&ext, &act, &Matrix::zeros(1, 1))
            .unwrap()
            .is_some());
        assert!(derivation_extending(&ext, &act, &Matrix::identity(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn five_term_on_heisenberg() {
        let act = plane_trivial();
        let ext = extension_from_cocycle(&act, &heisenberg_cocycle()).unwrap();
        let seq = ShortExactSequence::from_extension(&ext);
        let report = five_term_report(&seq, &act).unwrap();
        assert!(report.all_exact(), "{report:?}");
        assert_eq!(report.der_l_dim, 2);
        assert_eq!(report.hom_dim, 1);
        assert_eq!(report.h2_l_dim, 1);
    }
}
