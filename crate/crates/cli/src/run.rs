//! Command dispatch.

use crate::cache::Cache;
use crate::job::{Command, JobSpec};
use crate::report::{self, Report};
use gqg_core::algebra::{Algebra, AlgebraError, DegreeRecord};
use gqg_core::groupoid::{
    check_cartan_axioms, enumerate_roots, explore_groupoid, reflect, root_multisets,
    root_multisets_filtered, GroupoidError, RootSystemData,
};
use gqg_core::hc::{self, HCWindow, HcError};
use gqg_core::lattice::{CharacterU0, EtaHom, Weight};
use gqg_core::rank1::{Rank1Error, RankOneCtx, Window};
use gqg_core::verma::{self, CharacterSampler, VermaError};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    /// The job is well formed but unsuitable for the command.
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Hc(#[from] HcError),
    #[error(transparent)]
    Rank1(#[from] Rank1Error),
    #[error(transparent)]
    Scalar(#[from] gqg_core::scalars::ScalarError),
}

type Result<T> = std::result::Result<T, RunError>;

fn usage(s: impl Into<String>) -> RunError {
    RunError::Usage(s.into())
}

/// Canonical echo of the job; equal for jobs that denote the same computation.
pub fn echo(job: &JobSpec) -> Value {
    let n = job.chi.rank();
    json!({
        "preset": job.preset,
        "field": job.field.to_string(),
        "q": job.q_strings(),
        "eta": (0..n).map(|i| job.eta.eval(&Weight::simple(n, i)).to_string()).collect::<Vec<_>>(),
        "lambda": job.lambda.as_ref().map(|l| json!({
            "k": l.kvals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "l": l.lvals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })),
        "degree": job.degree.as_ref().map(report::weight),
        "max_height": job.max_height,
        "m": job.m,
        "t": job.t,
        "window": {
            "seeds": job.seeds.iter().map(|(l, m)| json!([report::weight(l), report::weight(m)])).collect::<Vec<_>>(),
            "radius": job.radius,
            "max_power": job.max_power,
        },
        "caps": { "roots": job.caps.roots, "height": job.caps.height },
        "seed": job.seed,
    })
}

/// An algebra whose degree registry is backed by the cache.
struct CachedAlgebra<'c> {
    alg: Arc<Algebra>,
    cache: &'c mut Cache,
    key_base: Value,
    loaded: BTreeSet<Weight>,
}

impl<'c> CachedAlgebra<'c> {
    /// Preloads cached degrees height by height, up to the first height with none.
    fn new(job: &JobSpec, cache: &'c mut Cache) -> Self {
        let alg = Arc::new(Algebra::new(job.chi.clone(), &job.caps));
        let key_base = json!({ "field": job.field.to_string(), "q": job.q_strings() });
        let mut me = CachedAlgebra {
            alg,
            cache,
            key_base,
            loaded: BTreeSet::new(),
        };
        if me.cache.is_enabled() {
            for h in 1..=job.caps.height {
                let before = me.loaded.len();
                for deg in Weight::of_height(job.chi.rank(), h) {
                    if let Some(rec) = me.cache.get::<DegreeRecord>(&me.key(&deg)) {
                        if rec.degree == deg && me.alg.import_degree(&rec).is_ok() {
                            me.loaded.insert(deg);
                        } else {
                            me.cache.reject_hit();
                        }
                    }
                }
                if me.loaded.len() == before {
                    break;
                }
            }
        }
        me
    }

    fn key(&self, deg: &Weight) -> Value {
        let mut k = self.key_base.clone();
        k["degree"] = report::weight(deg);
        k
    }

    fn persist(&mut self) {
        if !self.cache.is_enabled() {
            return;
        }
        for deg in self.alg.built_degrees() {
            if deg.is_zero() || self.loaded.contains(&deg) {
                continue;
            }
            if let Ok(rec) = self.alg.export_degree(&deg) {
                let key = self.key(&deg);
                self.cache.put(&key, &rec);
            }
        }
    }
}

fn roots_of(alg: &Algebra) -> Result<RootSystemData> {
    alg.roots().cloned().ok_or_else(|| {
        usage("the root system is not finite within the caps; run `roots` for the diagnosis")
    })
}

pub fn run(job: &JobSpec, cache: &mut Cache) -> Result<Report> {
    let mut r = Report {
        command: job.command.name(),
        job: echo(job),
        ..Default::default()
    };
    match job.command {
        Command::Roots => roots(job, &mut r)?,
        Command::Groupoid => groupoid(job, &mut r)?,
        Command::VerifyAll => verify_all(job, cache, &mut r)?,
        _ => {
            let mut ca = CachedAlgebra::new(job, cache);
            let res = match job.command {
                Command::PbwDims => pbw_dims(job, &ca.alg, &mut r),
                Command::Shapovalov => shapovalov(job, &ca.alg, &mut r),
                Command::Singular => singular(job, &ca.alg, &mut r),
                Command::Radical => radical(job, &ca.alg, &mut r),
                Command::CenterRank1 => center_rank1(job, &ca.alg, &mut r),
                Command::HcSolve => hc_solve(job, &ca.alg, &mut r, false),
                Command::CenterLift => hc_solve(job, &ca.alg, &mut r, true),
                _ => unreachable!(),
            };
            ca.persist();
            res?;
        }
    }
    Ok(r)
}

fn roots(job: &JobSpec, r: &mut Report) -> Result<()> {
    let rsd = enumerate_roots(&job.chi, &job.caps)?;
    r.results = json!({
        "theta": rsd.theta,
        "positive_roots": rsd.positive_roots.iter().map(report::weight).collect::<Vec<_>>(),
        "longest_word": rsd.longest_word.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "q_roots": (0..rsd.theta).map(|t| rsd.q_root(t).to_string()).collect::<Vec<_>>(),
        "kappa": (0..rsd.theta).map(|t| rsd.kappa_root(t)).collect::<Vec<_>>(),
    });
    let distinct: BTreeSet<_> = rsd.positive_roots.iter().collect();
    r.check(
        "the positive roots are distinct and positive",
        distinct.len() == rsd.theta && rsd.positive_roots.iter().all(|b| b.is_positive()),
    );
    r.check(
        "θ equals the length of the longest word",
        rsd.longest_word.len() == rsd.theta,
    );
    Ok(())
}

fn groupoid(job: &JobSpec, r: &mut Report) -> Result<()> {
    let atlas = explore_groupoid(&job.chi, &job.caps)?;
    let n = job.chi.rank();
    let mut involutive = true;
    for (a, obj) in atlas.objects.iter().enumerate() {
        for i in 0..n {
            let there = reflect(obj, i, job.caps.cartan)?;
            let back = reflect(&there.target, i, job.caps.cartan)?;
            involutive &= back.target == *obj && atlas.arrows[atlas.arrows[a][i]][i] == a;
        }
    }
    r.results = json!({
        "objects": atlas.objects.len(),
        "arrows": atlas.arrows,
        "cartan": atlas.cartan,
        "bicharacters": atlas.objects.iter().map(|o| o.matrix().iter().map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    r.check("τ_i∘τ_i = id at every object", involutive);
    r.check(
        "every Cartan matrix satisfies the generalized Cartan axioms",
        atlas.cartan.iter().all(|c| check_cartan_axioms(c)),
    );
    Ok(())
}

fn pbw_dims(job: &JobSpec, alg: &Algebra, r: &mut Report) -> Result<()> {
    let rsd = roots_of(alg)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for h in 1..=job.max_height {
        for deg in Weight::of_height(alg.rank(), h) {
            let dim = alg.dim(&deg)?;
            let count = root_multisets(&rsd, alg.chi(), &deg).len();
            ok &= dim == count;
            rows.push(json!({ "degree": report::weight(&deg), "dim": dim, "pbw_count": count }));
        }
    }
    r.results = json!({ "degrees": rows });
    r.check("dim U⁺_β = number of root multisets summing to β", ok);
    Ok(())
}

fn shapovalov(job: &JobSpec, alg: &Algebra, r: &mut Report) -> Result<()> {
    let rsd = roots_of(alg)?;
    let degrees: Vec<Weight> = match job.degree {
        Some(d) => vec![d],
        None => (1..=job.max_height)
            .flat_map(|h| Weight::of_height(alg.rank(), h))
            .collect(),
    };
    let mut out = Vec::new();
    for deg in degrees {
        let rep = verma::shapovalov_det_verify(alg, &rsd, &deg)?;
        r.check(
            format!(
                "det 𝒮 = z·∏(−ρ̂(α)q_α^(−t)K_α + L_α)^r(α,t) at {:?}",
                deg.coords()
            ),
            rep.holds,
        );
        out.push(json!({
            "degree": report::weight(&deg),
            "size": rep.size,
            "z": rep.gram_det.to_string(),
            "det": report::u0(&rep.det),
            "factors": rep.factors.iter().map(|f| json!({
                "root": report::weight(&rsd.positive_roots[f.root]),
                "t": f.t,
                "multiplicity": f.multiplicity,
                "poly": report::u0(&f.poly),
            })).collect::<Vec<_>>(),
        }));
    }
    r.results = json!({ "degrees": out });
    Ok(())
}

fn need<T: Copy>(v: Option<T>, name: &str, cmd: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("`{cmd}` needs `{name}`")))
}

/// Λ on the (β̇_m, t) hyperplane and off the earlier ones.
fn singular_point(
    job: &JobSpec,
    alg: &Algebra,
    rsd: &RootSystemData,
    m: usize,
    t: u64,
) -> Result<CharacterU0> {
    let mut s = CharacterSampler::new(job.field, job.seed);
    for _ in 0..256 {
        let lam = s.draw_on_hyperplane(alg, &rsd.positive_roots[m - 1], t as i64)?;
        let ok = (0..m - 1).all(|mp| {
            (1..rsd.kappa_root(mp)).all(|tp| {
                !verma::hyperplane_value(alg, &lam, &rsd.positive_roots[mp], tp as i64).is_zero()
            })
        });
        if ok {
            return Ok(lam);
        }
    }
    Err(VermaError::Sampling("no admissible character in 256 draws".into()).into())
}

fn character_json(l: &CharacterU0) -> Value {
    json!({
        "k": l.kvals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "l": l.lvals.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

fn singular(job: &JobSpec, alg: &Algebra, r: &mut Report) -> Result<()> {
    let rsd = roots_of(alg)?;
    let m = need(job.m, "m", "singular")?;
    let t = need(job.t, "t", "singular")?;
    if m > rsd.theta {
        return Err(usage(format!("m = {m} exceeds θ = {}", rsd.theta)));
    }
    let lam = match &job.lambda {
        Some(l) => l.clone(),
        None => singular_point(job, alg, &rsd, m, t)?,
    };
    let v = verma::singular_vector(alg, &rsd, m, t, &lam)?;
    let killed =
        (0..alg.rank()).all(|j| verma::act(alg, &lam, &alg.e(j), &v).is_ok_and(|w| w.is_zero()));
    r.results = json!({
        "root": report::weight(&rsd.positive_roots[m - 1]),
        "lambda": character_json(&lam),
        "vector": report::verma(alg, &v),
    });
    r.check("v′ ≠ 0", !v.is_zero());
    r.check("E_j v′ = 0 for every j", killed);
    Ok(())
}

fn radical(job: &JobSpec, alg: &Algebra, r: &mut Report) -> Result<()> {
    let rsd = roots_of(alg)?;
    let deg = need(job.degree, "degree", "radical")?;
    let mut s = CharacterSampler::new(job.field, job.seed);
    let lam = match (&job.lambda, job.m, job.t) {
        (Some(l), _, _) => l.clone(),
        (None, Some(m), Some(t)) if m <= rsd.theta => {
            s.draw_generic_on(alg, &rsd, &deg, m - 1, t as i64)?
        }
        (None, Some(_), Some(_)) => return Err(usage("m exceeds θ")),
        _ => s.draw_generic(alg, &rsd, &deg)?,
    };
    let mat = verma::shapovalov_matrix(alg, &deg)?.evaluate(&lam);
    let rank = mat.rank();
    let rad = verma::verma_radical(alg, &lam, &deg)?;
    let n = alg.dim(&deg)?;
    let mut annihilated = true;
    for v in &rad {
        for x in 0..n {
            annihilated &= verma::act(alg, &lam, &alg.e_basis(deg, x), v)?.is_zero();
        }
    }
    r.check(
        "rank Λ(𝒮_β) + dim N(Λ)_{−β} = dim U⁻_{−β}",
        rank + rad.len() == n,
    );
    r.check("X·v = 0 for every X ∈ U⁺_β and v ∈ N(Λ)_{−β}", annihilated);
    let mut bound = Value::Null;
    if let (None, Some(m), Some(t)) = (&job.lambda, job.m, job.t) {
        let rr = root_multisets_filtered(&rsd, alg.chi(), &deg, Some((m - 1, t as u32))).len();
        if rr > 0 {
            r.check("rank Λ(𝒮_β) ≤ m − r(α, t)", rank <= n - rr);
            bound = json!({ "r": rr, "m_minus_r": n - rr });
        }
    }
    r.results = json!({
        "degree": report::weight(&deg),
        "lambda": character_json(&lam),
        "dim": n,
        "rank": rank,
        "radical": rad.iter().map(|v| report::verma(alg, v)).collect::<Vec<_>>(),
        "rank_bound": bound,
    });
    Ok(())
}

fn center_rank1(job: &JobSpec, alg: &Arc<Algebra>, r: &mut Report) -> Result<()> {
    if alg.rank() != 1 {
        return Err(usage("`center-rank1` needs a rank-one q matrix"));
    }
    let eta = job.eta.eval(&Weight::simple(1, 0));
    let ctx = RankOneCtx::embedded(alg.clone(), 0, eta)?;
    let w = Window {
        seeds: job.seeds.clone(),
        radius: job.radius,
        max_power: job.max_power,
    };
    let class = ctx.classify_center(&w)?;
    let cmp = ctx.compare_with_solver(&w)?;
    // the shift identity reads elements of ctx as living on the opposite side
    let checker = ctx.opposite(ctx.eta.inv()?);
    let mut shift_ok = true;
    let mut elems = Vec::new();
    for (family, list) in [
        ("prime", &class.prime),
        ("double_prime", &class.double_prime),
    ] {
        for e in list.iter() {
            shift_ok &= checker.lusztig_shift_check(&e.elem)?;
            elems.push(json!({
                "family": family,
                "lambda": report::weight(&e.lambda),
                "mu": report::weight(&e.mu),
                "power": e.power,
                "layers": e.elem.layers.iter().map(report::u0).collect::<Vec<_>>(),
            }));
        }
    }
    if class.truncated {
        r.notices
            .push(format!("powers of C₁ are cut at {}", job.max_power));
    }
    r.results = json!({
        "elements": elems,
        "classified_inside_window": cmp.classified_inside,
        "classified_rank": cmp.classified_rank,
        "solver_dim": cmp.solver_dim,
    });
    r.check(
        "the classified family spans the solved skew-center on the window",
        cmp.matches(),
    );
    r.check("T(x)·Sh = j(Sh(x)) for every classified x", shift_ok);
    Ok(())
}

fn hc_solve(job: &JobSpec, alg: &Algebra, r: &mut Report, lift: bool) -> Result<()> {
    let rsd = roots_of(alg)?;
    let win = HCWindow::closure(&rsd, &job.seeds, job.radius);
    let sol = hc::solve_b_eta(alg, &rsd, &job.eta, &win)?;
    if win.truncated {
        r.notices.push(format!(
            "window closure truncated to the box of radius {}",
            job.radius
        ));
    }
    let mut in_b = true;
    let mut basis = Vec::new();
    let mut lifts = Vec::new();
    for p in &sol.basis {
        in_b &= hc::in_b_eta(alg, &rsd, &job.eta, p)?;
        basis.push(report::u0(p));
        if lift {
            let s = hc::reconstruct_center(alg, &rsd, &job.eta, p)?;
            let image = hc::hc_image(alg, &rsd, &job.eta, &s.v)?;
            r.check(
                format!("Sh(V) = P for basis element {}", lifts.len() + 1),
                image == *p,
            );
            lifts.push(json!({
                "height_bound": s.height_bound,
                "steps": s.steps,
                "v": report::uelem(alg, &s.v),
            }));
        }
    }
    r.check(
        "every basis element satisfies the defining equations of 𝔅_η",
        in_b,
    );
    if lift {
        r.check(
            "every lift V satisfies V E_i = η(α_i) E_i V and V F_i = η(−α_i) F_i V",
            true,
        );
    }
    r.results = json!({
        "window_pairs": win.len(),
        "constraints": sol.constraints,
        "dimension": sol.basis.len(),
        "basis": basis,
        "lifts": if lift { Value::Array(lifts) } else { Value::Null },
    });
    Ok(())
}

fn expected_theta(name: &str) -> Option<usize> {
    match name.split('-').next()? {
        "A1" => Some(1),
        "A2" => Some(3),
        "B2" => Some(4),
        _ => None,
    }
}

/// A compact version of the acceptance checks for one preset.
fn verify_all(job: &JobSpec, cache: &mut Cache, r: &mut Report) -> Result<()> {
    let name = job
        .preset
        .clone()
        .ok_or_else(|| usage("`verify-all` needs --preset"))?;
    let rsd = enumerate_roots(&job.chi, &job.caps)?;
    let n = job.chi.rank();
    if let Some(th) = expected_theta(&name) {
        r.check(format!("θ = {th}"), rsd.theta == th);
    }
    let mut sub = Report::default();
    groupoid(job, &mut sub)?;
    r.checks.extend(sub.checks);

    let ca = CachedAlgebra::new(job, cache);
    let alg = ca.alg.clone();
    let mut dims_ok = true;
    for h in 1..=4 {
        for deg in Weight::of_height(n, h) {
            dims_ok &= alg.dim(&deg)? == root_multisets(&rsd, alg.chi(), &deg).len();
        }
    }
    r.check("dim U⁺_β = number of root multisets, heights ≤ 4", dims_ok);

    let shapo_height = if n == 1 { 4 } else { 3 };
    let mut shapo_ok = true;
    for h in 1..=shapo_height {
        for deg in Weight::of_height(n, h) {
            shapo_ok &= verma::shapovalov_det_verify(&alg, &rsd, &deg)?.holds;
        }
    }
    r.check(
        format!("Shapovalov product formula, heights ≤ {shapo_height}"),
        shapo_ok,
    );

    let roots_of_unity = (0..rsd.theta).all(|t| rsd.kappa_root(t) >= 2);
    if roots_of_unity {
        let mut sv_ok = true;
        for m in 1..=rsd.theta {
            for t in 1..rsd.kappa_root(m - 1) {
                let lam = singular_point(job, &alg, &rsd, m, t)?;
                let v = verma::singular_vector(&alg, &rsd, m, t, &lam)?;
                for j in 0..n {
                    sv_ok &= verma::act(&alg, &lam, &alg.e(j), &v)?.is_zero();
                }
                sv_ok &= !v.is_zero();
            }
        }
        r.check(
            "singular vectors: v′ ≠ 0 and E_j v′ = 0 for every admissible (m, t)",
            sv_ok,
        );
    }

    let mut bound_ok = true;
    let mut s = CharacterSampler::new(job.field, job.seed);
    for deg in Weight::of_height(n, 2) {
        for root in 0..rsd.theta {
            if root_multisets_filtered(&rsd, alg.chi(), &deg, Some((root, 1))).is_empty() {
                continue;
            }
            let samples = (0..3)
                .map(|_| s.draw_generic_on(&alg, &rsd, &deg, root, 1))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let rep = verma::rank_bound_check(&alg, &rsd, &deg, root, 1, &samples)?;
            bound_ok &= rep.bound_holds() && rep.equality_reached();
        }
    }
    r.check(
        "rank Λ(𝒮_β) ≤ m − r with equality at generic points, height 2",
        bound_ok,
    );

    let eta = EtaHom::trivial(n);
    let z = Weight::zero(n);
    let seeds: Vec<_> = std::iter::once((z, z))
        .chain((0..n).map(|i| (z, Weight::simple(n, i))))
        .collect();
    let win = HCWindow::closure(&rsd, &seeds, 1);
    let sol = hc::solve_b_eta(&alg, &rsd, &eta, &win)?;
    let mut lift_ok = true;
    for p in &sol.basis {
        let v = hc::reconstruct_center(&alg, &rsd, &eta, p)?;
        lift_ok &= hc::hc_image(&alg, &rsd, &eta, &v.v)? == *p;
    }
    r.check(
        format!(
            "every element of the windowed 𝔅_1 (dimension {}) lifts to 𝒵_1 with Sh(V) = P",
            sol.basis.len()
        ),
        lift_ok,
    );

    let mut ca = ca;
    ca.persist();
    r.results = json!({ "preset": name, "theta": rsd.theta, "b_eta_dimension": sol.basis.len() });
    Ok(())
}
