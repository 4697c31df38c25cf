use std::fmt;
use std::path::Path;

use homlie::action::{coboundary_derivations, derivation_space, HomAction};
use homlie::algebra::{morphism_report, HomLie};
use homlie::cohomology::{coboundary_preimage, cohomologous, cohomology_group, h0_matches_invariants, is_equivariant};
use homlie::crossed::{
    eta, eta_section_independence, functor_p, functor_s, ps_isomorphism, sp_isomorphism, AlphaCrossedExtension, Cat1,
    CrossedModule, Flavor,
};
use homlie::dsl::{parse_workspace, Workspace};
use homlie::exactla::Matrix;
use homlie::extension::{
    baer_scalar, baer_scalar_cocycle, baer_sum, baer_sum_cocycle, cocycle_from_extension, equivalent_extensions,
    extension_from_cocycle, find_section, five_term_report, AbelianExtension, ShortExactSequence,
};
use homlie::free::{FreeHomLie, HomSet};
use homlie::Rational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::report::{self, numbered};
use crate::{Command, CrossedCommand, ExtensionArgs, ExtensionCommand, FlavorArg};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(homlie::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<homlie::Error> for CliError {
    fn from(e: homlie::Error) -> Self {
        CliError::Math(e)
    }
}

type Outcome = Result<(Value, u8), CliError>;

struct Loaded {
    ws: Workspace,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{}: not UTF-8", path.display())))?;
    let ws = parse_workspace(&text).map_err(|e| CliError::Usage(format!("{}:{e}", path.display())))?;
    Ok(Loaded {
        ws,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

fn missing(kind: &str, name: &str) -> CliError {
    CliError::Usage(format!("no {kind} named `{name}`"))
}

impl Loaded {
    fn algebra(&self, name: &str) -> Result<(&HomLie<Rational>, &[String]), CliError> {
        self.ws
            .algebra(name)
            .map(|a| (&a.algebra, a.basis.as_slice()))
            .ok_or_else(|| missing("algebra", name))
    }

    fn module(&self, name: &str) -> Result<&HomAction<Rational>, CliError> {
        self.ws
            .module(name)
            .map(|m| &m.action)
            .ok_or_else(|| missing("module", name))
    }

    fn map(&self, name: &str) -> Result<&Matrix<Rational>, CliError> {
        self.ws.map(name).map(|m| &m.matrix).ok_or_else(|| missing("map", name))
    }

    fn base_basis(&self, module: &str) -> Vec<String> {
        let over = &self.ws.module(module).expect("checked").over;
        self.ws.algebra(over).expect("resolved").basis.clone()
    }

    /// A cochain name, or `E:i:p:s[:t]`.
    fn extension(&self, module: &str, spec: &str) -> Result<AbelianExtension<Rational>, CliError> {
        let action = self.module(module)?;
        if let Some(c) = self.ws.cochain(spec) {
            if c.module != module {
                return Err(CliError::Usage(format!(
                    "cochain `{spec}` is over `{}`, not `{module}`",
                    c.module
                )));
            }
            return Ok(extension_from_cocycle(action, &c.cochain)?);
        }
        let parts: Vec<&str> = spec.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(CliError::Usage(format!(
                "`{spec}` is neither a cochain nor E:i:p:s[:t]"
            )));
        }
        let (algebra, _) = self.algebra(parts[0])?;
        let s = match parts.get(4) {
            Some(t) => self.map(t)?.clone(),
            None => action.algebra().alpha().clone(),
        };
        Ok(AbelianExtension {
            module: action.clone(),
            algebra: algebra.clone(),
            inclusion: self.map(parts[1])?.clone(),
            projection: self.map(parts[2])?.clone(),
            section: self.map(parts[3])?.clone(),
            s,
        })
    }
}

fn envelope(echo: &[String], digest: Option<&str>, body: Value) -> Value {
    let mut out = json!({ "command": echo });
    if let Some(d) = digest {
        out["input_digest"] = json!(d);
    }
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub fn run(command: &Command, echo: &[String]) -> Outcome {
    match command {
        Command::Validate { file } => validate(&load(file)?, echo),
        Command::Cohomology {
            file,
            algebra,
            module,
            max_degree,
        } => cohomology(&load(file)?, echo, algebra, module, *max_degree),
        Command::Extension(sub) => extension(sub, echo),
        Command::Crossed(sub) => crossed(sub, echo),
        Command::Free { generators, max_length } => free(echo, generators, *max_length),
        Command::Section { file, map } => section(&load(file)?, echo, map),
    }
}

fn validate(l: &Loaded, echo: &[String]) -> Outcome {
    let mut ok = true;
    let algebras: Vec<Value> =
        l.ws.algebras
            .iter()
            .map(|a| {
                let r = a.algebra.validate();
                ok &= r.is_valid();
                json!({
                    "name": a.name, "dim": a.algebra.dim(), "skew": r.skew, "hom_jacobi": r.hom_jacobi,
                    "multiplicative": r.multiplicative, "regular": r.regular, "valid": r.is_valid(),
                })
            })
            .collect();
    let modules: Vec<Value> =
        l.ws.modules
            .iter()
            .map(|m| {
                let r = m.action.validate();
                let space_valid = m.action.space().is_valid();
                ok &= r.is_action() && space_valid;
                json!({
                    "name": m.name, "over": m.over, "dim": m.action.dim_m(), "space_valid": space_valid,
                    "axiom_a": r.a, "axiom_b": r.b, "axiom_c": r.c, "action": r.is_action(), "module": r.is_module,
                })
            })
            .collect();
    let maps: Vec<Value> = l
        .ws
        .maps
        .iter()
        .map(|m| {
            let (s, t) = (l.ws.structure(&m.source).expect("resolved"), l.ws.structure(&m.target).expect("resolved"));
            let r = morphism_report(&m.matrix, s, t).ok();
            json!({
                "name": m.name, "source": m.source, "target": m.target,
                "preserves_bracket": r.map(|r| r.preserves_bracket), "intertwines_alpha": r.map(|r| r.intertwines_alpha),
            })
        })
        .collect();
    let cochains: Vec<Value> = l
        .ws
        .cochains
        .iter()
        .map(|c| {
            let action = &l.ws.module(&c.module).expect("resolved").action;
            let equivariant = is_equivariant(action, &c.cochain);
            let cocycle = equivariant && homlie::cohomology::is_cocycle(action, &c.cochain).unwrap_or(false);
            json!({ "name": c.name, "module": c.module, "degree": c.cochain.degree(), "equivariant": equivariant, "cocycle": cocycle })
        })
        .collect();
    let body = json!({ "valid": ok, "algebras": algebras, "modules": modules, "maps": maps, "cochains": cochains });
    Ok((envelope(echo, Some(&l.digest), body), if ok { 0 } else { 1 }))
}

fn resolve_module(l: &Loaded, algebra: &str, module: &str) -> Result<HomAction<Rational>, CliError> {
    let (a, _) = l.algebra(algebra)?;
    if module == "adjoint" && l.ws.module("adjoint").is_none() {
        return Ok(HomAction::adjoint_module(a.clone()));
    }
    let m = l.ws.module(module).ok_or_else(|| missing("module", module))?;
    if m.over != algebra {
        return Err(CliError::Usage(format!(
            "module `{module}` is over `{}`, not `{algebra}`",
            m.over
        )));
    }
    Ok(m.action.clone())
}

fn cohomology(l: &Loaded, echo: &[String], algebra: &str, module: &str, max_degree: usize) -> Outcome {
    let action = resolve_module(l, algebra, module)?;
    let report = action.validate();
    if !report.is_module {
        return Err(CliError::Math(homlie::Error::NotAModule(format!("{report:?}"))));
    }
    let degrees: Vec<Value> = (0..=max_degree)
        .map(|n| {
            let g = cohomology_group(&action, n);
            json!({ "degree": n, "cochains": g.cochain_dim, "cocycles": g.cocycle_dim, "coboundaries": g.coboundary_dim, "dim": g.dim })
        })
        .collect();
    let der = derivation_space(&action, action.algebra().alpha())?;
    let inner = coboundary_derivations(&action);
    let body = json!({
        "algebra": algebra, "module": module, "degrees": degrees,
        "h0_matches_invariants": h0_matches_invariants(&action),
        "derivations": der.dim(), "inner_derivations": inner.dim(),
    });
    Ok((envelope(echo, Some(&l.digest), body), 0))
}

fn extension_json(e: &AbelianExtension<Rational>, module_basis: &[String], base_basis: &[String]) -> Value {
    let mut names: Vec<String> = module_basis.to_vec();
    if names.len() + base_basis.len() == e.dim_e() {
        names.extend(base_basis.iter().cloned());
    } else {
        names = numbered("e", e.dim_e());
    }
    let r = e.validate();
    json!({
        "algebra": report::algebra(&e.algebra, &names),
        "inclusion": report::matrix(&e.inclusion),
        "projection": report::matrix(&e.projection),
        "section": report::matrix(&e.section),
        "is_extension": r.is_extension(),
        "is_alpha_extension": r.is_s_extension(),
    })
}

fn extension(sub: &ExtensionCommand, echo: &[String]) -> Outcome {
    let common: &ExtensionArgs = match sub {
        ExtensionCommand::Build { common, .. }
        | ExtensionCommand::Extract { common, .. }
        | ExtensionCommand::Equiv { common, .. }
        | ExtensionCommand::Baer { common, .. }
        | ExtensionCommand::FiveTerm { common, .. } => common,
    };
    let l = load(&common.file)?;
    let module = common.module.as_str();
    let action = l.module(module)?;
    let mb = l.ws.module(module).expect("checked").basis.clone();
    let lb = l.base_basis(module);
    let body = match sub {
        ExtensionCommand::Build { cocycle, .. } => {
            let c = l.ws.cochain(cocycle).ok_or_else(|| missing("cochain", cocycle))?;
            let e = extension_from_cocycle(action, &c.cochain)?;
            json!({ "extension": extension_json(&e, &mb, &lb) })
        }
        ExtensionCommand::Extract { ext, .. } => {
            let e = l.extension(module, ext)?;
            let r = e.validate();
            if !r.is_extension() {
                json!({ "is_extension": false, "report": format!("{r:?}") })
            } else {
                let w = cocycle_from_extension(&e)?;
                let trivial = coboundary_preimage(action, &w)?.is_some();
                json!({ "is_extension": true, "cocycle": report::cochain(&w, &lb), "trivial_class": trivial })
            }
        }
        ExtensionCommand::Equiv { ext, .. } => {
            let (a, b) = (l.extension(module, &ext[0])?, l.extension(module, &ext[1])?);
            let phi = equivalent_extensions(&a, &b)?;
            let (wa, wb) = (cocycle_from_extension(&a)?, cocycle_from_extension(&b)?);
            let theta = cohomologous(action, &wa, &wb)?;
            json!({
                "equivalent": phi.is_some(),
                "equivalence": phi.as_ref().map(report::matrix),
                "cohomologous": theta.is_some(),
                "difference_primitive": theta.as_ref().map(|t| report::cochain(t, &lb)),
            })
        }
        ExtensionCommand::Baer { ext, scalar, .. } => {
            let a = l.extension(module, &ext[0])?;
            let (categorical, cocycle) = match scalar {
                Some(k) => {
                    let k = parse_scalar(k)?;
                    (baer_scalar(&a, &k)?, baer_scalar_cocycle(&a, &k)?)
                }
                None => {
                    let second = ext
                        .get(1)
                        .ok_or_else(|| CliError::Usage("Baer sum needs two extensions".into()))?;
                    let b = l.extension(module, second)?;
                    (baer_sum(&a, &b)?, baer_sum_cocycle(&a, &b)?)
                }
            };
            let agree = equivalent_extensions(&categorical, &cocycle)?.is_some();
            let w = cocycle_from_extension(&cocycle)?;
            json!({
                "routes_agree": agree,
                "cocycle": report::cochain(&w, &lb),
                "trivial_class": coboundary_preimage(action, &w)?.is_some(),
                "dim": categorical.dim_e(),
            })
        }
        ExtensionCommand::FiveTerm { ext, coefficients, .. } => {
            let e = l.extension(module, ext)?;
            let coeff = match coefficients {
                Some(name) => l.module(name)?.clone(),
                None => action.clone(),
            };
            let seq = ShortExactSequence::from_extension(&e);
            let r = five_term_report(&seq, &coeff)?;
            json!({
                "der_l": r.der_l_dim, "der_e": r.der_e_dim, "hom_kernel": r.hom_dim, "h2_l": r.h2_l_dim, "h2_e": r.h2_e_dim,
                "injective_at_der_l": r.injective_at_der_l, "exact_at_der_e": r.exact_at_der_e,
                "exact_at_hom": r.exact_at_hom, "exact_at_h2_l": r.exact_at_h2_l, "all_exact": r.all_exact(),
            })
        }
    };
    Ok((envelope(echo, Some(&l.digest), body), 0))
}

fn parse_scalar(text: &str) -> Result<Rational, CliError> {
    if text.contains('/')
        && text
            .split('/')
            .nth(1)
            .is_some_and(|d| d.trim().trim_start_matches('0').is_empty())
    {
        return Err(CliError::Usage("zero denominator".into()));
    }
    text.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("`{text}` is not an integer or p/q")))
}

fn flavor(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Standard => Flavor::Standard,
        FlavorArg::Alpha => Flavor::Alpha,
    }
}

fn crossed_json(r: &homlie::crossed::CrossedReport) -> Value {
    json!({
        "action_valid": r.action_valid, "mu_morphism": r.mu_morphism, "equivariance": r.equivariance,
        "peiffer": r.peiffer, "image_ideal": r.image_ideal, "kernel_central": r.kernel_central,
        "kernel_module": r.kernel_module, "holds": r.holds(),
    })
}

fn cat1_json(r: &homlie::crossed::Cat1Report) -> Value {
    json!({
        "sub_algebra": r.sub_algebra, "s_morphism": r.s_morphism, "t_morphism": r.t_morphism,
        "images_in_sub": r.images_in_sub, "s_retracts": r.s_retracts, "t_retracts": r.t_retracts,
        "kernels_commute": r.kernels_commute, "holds": r.holds(),
    })
}

fn crossed_module(l: &Loaded, action: &str, mu: &str) -> Result<CrossedModule<Rational>, CliError> {
    Ok(CrossedModule::new(l.module(action)?.clone(), l.map(mu)?.clone())?)
}

fn cat1(l: &Loaded, algebra: &str, s: &str, t: &str) -> Result<Cat1<Rational>, CliError> {
    let (p, _) = l.algebra(algebra)?;
    let s = l.map(s)?.clone();
    let t = l.map(t)?.clone();
    if s.shape() != (p.dim(), p.dim()) || t.shape() != (p.dim(), p.dim()) {
        return Err(CliError::Usage(format!("s and t must be endomorphisms of `{algebra}`")));
    }
    Ok(Cat1 {
        algebra: p.clone(),
        sub: s.image(),
        s,
        t,
    })
}

fn crossed(sub: &CrossedCommand, echo: &[String]) -> Outcome {
    match sub {
        CrossedCommand::Check {
            file,
            action,
            mu,
            flavor: f,
        } => {
            let l = load(file)?;
            let cm = crossed_module(&l, action, mu)?;
            let r = cm.validate(flavor(*f))?;
            let semidirect = match f {
                FlavorArg::Standard => Some(cm.validate_via_semidirect()?),
                FlavorArg::Alpha => None,
            };
            let body = json!({ "flavor": format!("{f:?}").to_lowercase(), "report": crossed_json(&r), "via_semidirect": semidirect });
            Ok((envelope(echo, Some(&l.digest), body), if r.holds() { 0 } else { 1 }))
        }
        CrossedCommand::Cat1 { file, algebra, s, t } => {
            let l = load(file)?;
            let c = cat1(&l, algebra, s, t)?;
            let r = c.validate();
            let body = json!({ "report": cat1_json(&r), "sub": report::subspace(&c.sub) });
            Ok((envelope(echo, Some(&l.digest), body), if r.holds() { 0 } else { 1 }))
        }
        CrossedCommand::FunctorP { file, algebra, s, t } => {
            let l = load(file)?;
            let c = cat1(&l, algebra, s, t)?;
            let r = c.validate();
            if !r.holds() {
                let body = json!({ "cat1": cat1_json(&r) });
                return Ok((envelope(echo, Some(&l.digest), body), 1));
            }
            let cm = functor_p(&c)?;
            let back = sp_isomorphism(&c)?;
            let names = numbered("n", cm.source().dim());
            let body = json!({
                "cat1": cat1_json(&r),
                "source": report::algebra(cm.source(), &names),
                "mu": report::matrix(&cm.mu),
                "crossed": crossed_json(&cm.validate(Flavor::Standard)?),
                "round_trip_isomorphism": report::matrix(&back),
            });
            Ok((envelope(echo, Some(&l.digest), body), 0))
        }
        CrossedCommand::FunctorS { file, action, mu } => {
            let l = load(file)?;
            let cm = crossed_module(&l, action, mu)?;
            let r = cm.validate(Flavor::Standard)?;
            if !r.holds() {
                return Ok((
                    envelope(echo, Some(&l.digest), json!({ "crossed": crossed_json(&r) })),
                    1,
                ));
            }
            let c = functor_s(&cm)?;
            let (f, phi) = ps_isomorphism(&cm)?;
            let mut names = l.ws.module(action).expect("checked").basis.clone();
            names.extend(l.base_basis(action));
            let body = json!({
                "crossed": crossed_json(&r),
                "algebra": report::algebra(&c.algebra, &names),
                "sub": report::subspace(&c.sub),
                "s": report::matrix(&c.s),
                "t": report::matrix(&c.t),
                "cat1": cat1_json(&c.validate()),
                "round_trip_isomorphism": { "source": report::matrix(&f), "target": report::matrix(&phi) },
            });
            Ok((envelope(echo, Some(&l.digest), body), 0))
        }
        CrossedCommand::Eta {
            file,
            module,
            action,
            mu,
            chi,
            pi,
            sigma,
            rho,
            trials,
        } => {
            let l = load(file)?;
            let xi = AlphaCrossedExtension {
                module: l.module(module)?.clone(),
                crossed: crossed_module(&l, action, mu)?,
                chi: l.map(chi)?.clone(),
                pi: l.map(pi)?.clone(),
                sigma: l.map(sigma)?.clone(),
                rho: l.map(rho)?.clone(),
            };
            let r = xi.validate();
            if !r.holds() {
                let body = json!({ "valid": false, "report": format!("{r:?}") });
                return Ok((envelope(echo, Some(&l.digest), body), 1));
            }
            let e = eta(&xi)?;
            let lb = l.base_basis(module);
            let class_zero = coboundary_preimage(&xi.module, &e.h)?.is_some();
            let t = eta_section_independence(&xi, *trials)?;
            let ok = e.in_kernel && e.equivariant && e.cocycle && t.all_cohomologous();
            let body = json!({
                "valid": true,
                "h": report::cochain(&e.h, &lb),
                "in_kernel": e.in_kernel,
                "equivariant": e.equivariant,
                "cocycle": e.cocycle,
                "class_zero": class_zero,
                "trials": t.certificates.len(),
                "section_independent": t.all_cohomologous(),
            });
            Ok((envelope(echo, Some(&l.digest), body), if ok { 0 } else { 1 }))
        }
    }
}

fn parse_generators(spec: &str) -> Result<HomSet, CliError> {
    let bad = |m: String| CliError::Usage(format!("generators `{spec}`: {m}"));
    let items: Vec<(&str, Option<&str>)> = spec
        .split(',')
        .map(|s| match s.split_once("->") {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        })
        .collect();
    let names: Vec<String> = items.iter().map(|(a, _)| a.to_string()).collect();
    if names
        .iter()
        .any(|n| n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_'))
    {
        return Err(bad("generator names are alphanumeric".into()));
    }
    let twisted = items.iter().any(|(_, b)| b.is_some());
    if !twisted {
        return HomSet::identity(names).map_err(|e| bad(e.to_string()));
    }
    let alpha = items
        .iter()
        .map(|(a, b)| match b {
            None => Err(bad(format!("`{a}` has no image"))),
            Some("0") => Ok(None),
            Some(b) => names
                .iter()
                .position(|n| n == b)
                .map(Some)
                .ok_or_else(|| bad(format!("unknown image `{b}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    HomSet::new(names, alpha).map_err(|e| bad(e.to_string()))
}

fn free(echo: &[String], generators: &str, max_length: usize) -> Outcome {
    let x = parse_generators(generators)?;
    let f = FreeHomLie::<Rational>::new(&x, max_length)?;
    let degrees: Vec<Value> = (1..=max_length)
        .map(|n| {
            let b = f.degree_basis(n);
            let reps: Vec<String> = b.representatives.iter().map(|w| w.display(&x).to_string()).collect();
            json!({ "degree": n, "words": b.word_count, "relation_rank": b.relation_rank, "dim": b.dim(), "basis": reps })
        })
        .collect();
    let twist: Vec<Value> = (0..x.len())
        .map(|i| json!(x.twist(i).map(|j| x.names()[j].clone())))
        .collect();
    let body = json!({ "generators": x.names(), "twist": twist, "degrees": degrees });
    Ok((envelope(echo, None, body), 0))
}

fn section(l: &Loaded, echo: &[String], map: &str) -> Outcome {
    let m = l.ws.map(map).ok_or_else(|| missing("map", map))?;
    let (src, tgt) = (
        l.ws.structure(&m.source).expect("resolved"),
        l.ws.structure(&m.target).expect("resolved"),
    );
    let found = find_section(&m.matrix, src.alpha(), tgt.alpha())?;
    let body = json!({
        "map": map,
        "section": found.as_ref().map(report::matrix).unwrap_or(json!("absent")),
    });
    Ok((envelope(echo, Some(&l.digest), body), 0))
}
