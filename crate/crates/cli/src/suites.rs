//! Verification suites over a zoo.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use nctrace::algebra::{Bimodule, MatrixAlgebra, DEFAULT_MAX_LENGTH};
use nctrace::chow::{
    compose_correspondences, chow_identity, eq12_check, iota_functor_check, k_identity, mukai, sqrt_todd,
    todd_class, Correspondence, KClass, Variety,
};
use nctrace::exactalg::{parse_rational, rational_string, Field};
use nctrace::hochschild::{
    hh_dims, hh_rhom_identity_check, hrr_check, lefschetz_check, pairing_gram, pairing_kills_commutators,
};
use nctrace::verify::{Verdict, VerificationCase};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::report::{Timing, VerificationReport};
use crate::zoo::{Expected, Kind, Zoo, ZooEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Lefschetz,
    Hrr,
    Grr,
    Eq12,
    Properties,
}

/// Accepted on the command line; `all` runs every suite.
pub const SUITE_NAMES: [&str; 6] = ["lefschetz", "hrr", "grr", "eq12", "properties", "all"];

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lefschetz, Suite::Hrr, Suite::Grr, Suite::Eq12, Suite::Properties];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lefschetz => "lefschetz",
            Suite::Hrr => "hrr",
            Suite::Grr => "grr",
            Suite::Eq12 => "eq12",
            Suite::Properties => "properties",
        }
    }

    /// `None` for unknown names; `all` expands to every suite.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().find(|s| s.name() == name).map(|&s| vec![s])
    }

    /// Suites over a general field; the others are rational by nature.
    pub fn algebraic(self) -> bool {
        matches!(self, Suite::Lefschetz | Suite::Hrr | Suite::Properties)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub field: Field,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Run only cases named `case` or `case/...`.
    pub case: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: Field::Rationals,
            jobs: None,
            case: None,
        }
    }
}

type Check = Box<dyn Fn() -> VerificationCase + Send + Sync>;

struct Job {
    name: String,
    check: Check,
}

fn job(name: String, check: impl Fn(&str) -> VerificationCase + Send + Sync + 'static) -> Job {
    let n = name.clone();
    Job {
        name,
        check: Box::new(move || check(&n)),
    }
}

fn selected(name: &str, filter: &Option<String>) -> bool {
    match filter {
        None => true,
        Some(f) => name == f || name.strip_prefix(f.as_str()).is_some_and(|rest| rest.starts_with('/')),
    }
}

/// Marks a passing case as failed if it disagrees with the declared value.
fn apply_expected(mut case: VerificationCase, expected: &Option<Expected>, render: impl Fn(&str) -> Option<String>) -> VerificationCase {
    let Some(exp) = expected else {
        return case;
    };
    let want = render(&exp.value);
    match case.verdict {
        Verdict::Pass if case.lhs != want => {
            case.verdict = Verdict::Fail;
            case.reason = Some(format!(
                "expected value {} ({:?}) but both sides are {}",
                exp.value,
                exp.provenance,
                case.lhs.as_deref().unwrap_or("-")
            ));
            case
        }
        Verdict::Inapplicable => {
            case.verdict = Verdict::Fail;
            let why = case.reason.take().unwrap_or_default();
            case.reason = Some(format!("expected value {} declared but the check is inapplicable: {why}", exp.value));
            case
        }
        _ => case,
    }
}

fn in_field(field: Field) -> impl Fn(&str) -> Option<String> {
    move |v: &str| {
        let q = parse_rational(v).ok()?;
        field.from_rational(&q).ok().map(|x| x.to_string())
    }
}

fn rational(v: &str) -> Option<String> {
    parse_rational(v).ok().map(|q| rational_string(&q))
}

/// Prefix of the reason on cases whose zoo entry could not be built.
pub const INVALID_ENTRY: &str = "invalid entry: ";

fn entry_failure(name: &str, e: impl fmt::Display) -> VerificationCase {
    VerificationCase::error(name, format!("{INVALID_ENTRY}{e}"))
}

fn lefschetz_jobs(zoo: &Zoo, field: Field) -> Vec<Job> {
    zoo.of_kind(Kind::Bimodule)
        .map(|e| {
            let e = e.clone();
            job(e.name.clone(), move |name| {
                let a = match e.build_algebra(field) {
                    Ok(a) => a,
                    Err(err) => return entry_failure(name, err),
                };
                let m = match e.build_bimodule(&a) {
                    Ok(m) => m,
                    Err(err) => return entry_failure(name, err),
                };
                let case = lefschetz_check(name, &a, &m, e.vanish_bound.unwrap_or(1));
                apply_expected(case, &e.expected, in_field(field))
            })
        })
        .collect()
}

fn hrr_jobs(zoo: &Zoo, field: Field) -> Vec<Job> {
    let mut jobs = vec![];
    for e in zoo.of_kind(Kind::ModulePair) {
        let run = |e: ZooEntry, oracle: bool| {
            move |name: &str| {
                let built = e.build_algebra(field).and_then(|a| e.build_pair(&a));
                let (m, n) = match built {
                    Ok(p) => p,
                    Err(err) => return entry_failure(name, err),
                };
                if oracle {
                    let case = hh_rhom_identity_check(name, &m, &n, DEFAULT_MAX_LENGTH);
                    apply_expected(case, &e.expected, |v| parse_rational(v).ok().map(|q| q.to_string()))
                } else {
                    let case = hrr_check(name, &m, &n, DEFAULT_MAX_LENGTH);
                    apply_expected(case, &e.expected, in_field(field))
                }
            }
        };
        jobs.push(job(e.name.clone(), run(e.clone(), false)));
        jobs.push(job(format!("{}/oracle", e.name), run(e.clone(), true)));
    }
    jobs
}

fn basis_correspondence(x: &Variety, y: &Variety, i: usize) -> Correspondence<KClass> {
    let xy = x.product(y);
    Correspondence::new(x.clone(), y.clone(), KClass::basis_element(&xy, i)).expect("class lives on X x Y")
}

fn grr_jobs(zoo: &Zoo) -> Vec<Job> {
    let vs = zoo.varieties();
    let mut jobs = vec![];
    for x in &vs {
        let x1 = x.clone();
        jobs.push(job(format!("{x}/diagonal"), move |name| {
            VerificationCase::compare(name, &mukai(&k_identity(&x1)).class, &chow_identity(&x1).class)
        }));
    }
    for x in &vs {
        for y in &vs {
            for i in 0..x.basis_len() * y.basis_len() {
                let (x1, y1) = (x.clone(), y.clone());
                jobs.push(job(format!("{x}-{y}/{i}/identity"), move |name| {
                    let f = basis_correspondence(&x1, &y1, i);
                    let k_left = compose_correspondences(&k_identity(&x1), &f);
                    let k_right = compose_correspondences(&f, &k_identity(&y1));
                    let phi = mukai(&f);
                    let c_left = compose_correspondences(&chow_identity(&x1), &phi);
                    let c_right = compose_correspondences(&phi, &chow_identity(&y1));
                    match (k_left, k_right, c_left, c_right) {
                        (Ok(kl), Ok(kr), Ok(cl), Ok(cr)) => {
                            let ok = kl.class == f.class
                                && kr.class == f.class
                                && cl.class == phi.class
                                && cr.class == phi.class;
                            let shown = if ok {
                                f.class.to_string()
                            } else {
                                format!("{} | {}", kl.class, kr.class)
                            };
                            VerificationCase::compare(name, shown, &f.class)
                        }
                        _ => VerificationCase::error(name, "composition failed"),
                    }
                }));
            }
        }
    }
    for x in &vs {
        for y in &vs {
            for z in &vs {
                for i in 0..x.basis_len() * y.basis_len() {
                    for j in 0..y.basis_len() * z.basis_len() {
                        let (x1, y1, z1) = (x.clone(), y.clone(), z.clone());
                        jobs.push(job(format!("{x}-{y}-{z}/{i}.{j}"), move |name| {
                            let f = basis_correspondence(&x1, &y1, i);
                            let g = basis_correspondence(&y1, &z1, j);
                            iota_functor_check(name, &f, &g)
                        }));
                    }
                }
            }
        }
    }
    jobs
}

fn eq12_jobs(zoo: &Zoo) -> Vec<Job> {
    zoo.of_kind(Kind::VarietyKernel)
        .map(|e| {
            let e = e.clone();
            job(e.name.clone(), move |name| {
                let spec = e.kernel.as_ref().expect("validated");
                let kernel = match spec.build() {
                    Ok(k) => k,
                    Err(err) => return entry_failure(name, err),
                };
                apply_expected(eq12_check(name, &spec.variety(), &kernel), &e.expected, rational)
            })
        })
        .collect()
}

fn properties_jobs(zoo: &Zoo, field: Field) -> Vec<Job> {
    let mut jobs = vec![];
    let algebras: Vec<ZooEntry> = zoo.of_kind(Kind::Algebra).cloned().collect();
    for e in &algebras {
        let e1 = e.clone();
        jobs.push(job(format!("{}/commutators", e.name), move |name| {
            let a = match e1.build_algebra(field) {
                Ok(a) => a,
                Err(err) => return entry_failure(name, err),
            };
            match pairing_kills_commutators(&a) {
                Ok(()) => VerificationCase::compare(name, 0, 0),
                Err((i, j)) => VerificationCase::compare(name, 1, 0).with_reason(format!(
                    "pairing is nonzero on [{}, {}]",
                    a.labels()[i],
                    a.labels()[j]
                )),
            }
        }));
        let e1 = e.clone();
        jobs.push(job(format!("{}/gram", e.name), move |name| {
            let a = match e1.build_algebra(field) {
                Ok(a) => a,
                Err(err) => return entry_failure(name, err),
            };
            let g = pairing_gram(&a);
            let (rank, dim) = (g.rank(), g.rows());
            if e1.smooth_proper() || rank == dim {
                VerificationCase::compare(name, rank, dim)
            } else {
                VerificationCase::compare(name, rank, rank)
                    .with_reason(format!("singular pairing (rank {rank} of {dim}) allowed: not declared smooth"))
            }
        }));
        let e1 = e.clone();
        jobs.push(job(format!("{}/morita", e.name), move |name| {
            let run = || -> Result<(Vec<usize>, Vec<usize>), String> {
                let a = e1.build_algebra(field).map_err(|e| e.to_string())?;
                let m2 = MatrixAlgebra::new(a.clone(), 2).map_err(|e| e.to_string())?.algebra;
                let lhs = hh_dims(&a, &Bimodule::diagonal(a.clone()), 2).map_err(|e| e.to_string())?;
                let rhs = hh_dims(&m2, &Bimodule::diagonal(m2.clone()), 2).map_err(|e| e.to_string())?;
                Ok((lhs, rhs))
            };
            match run() {
                Ok((l, r)) => VerificationCase::compare(name, format!("{l:?}"), format!("{r:?}")),
                Err(err) => entry_failure(name, err),
            }
        }));
    }
    for a in &algebras {
        for b in &algebras {
            let (a1, b1) = (a.clone(), b.clone());
            jobs.push(job(format!("{}⊗{}/kunneth", a.name, b.name), move |name| {
                let run = || -> Result<(usize, usize), String> {
                    let a = a1.build_algebra(field).map_err(|e| e.to_string())?;
                    let b = b1.build_algebra(field).map_err(|e| e.to_string())?;
                    let ab = std::sync::Arc::new(a.tensor(&b).map_err(|e| e.to_string())?);
                    let dim = |x: &nctrace::algebra::AlgebraRef| {
                        hh_dims(x, &Bimodule::diagonal(x.clone()), 0).map(|d| d[0]).map_err(|e| e.to_string())
                    };
                    Ok((dim(&ab)?, dim(&a)? * dim(&b)?))
                };
                match run() {
                    Ok((l, r)) => VerificationCase::compare(name, l, r),
                    Err(err) => entry_failure(name, err),
                }
            }));
        }
    }
    for x in zoo.varieties() {
        let x1 = x.clone();
        jobs.push(job(format!("{x}/sqrt_todd"), move |name| {
            let r = sqrt_todd(&x1);
            VerificationCase::compare(name, r.mul(&r), todd_class(&x1))
        }));
        for (i, mono) in x.monomials().into_iter().enumerate() {
            let x1 = x.clone();
            let degrees: Vec<i64> = mono.iter().map(|&e| e as i64).collect();
            let label: Vec<String> = degrees.iter().map(i64::to_string).collect();
            jobs.push(job(format!("{x}/riemann_roch/O({})", label.join(",")), move |name| {
                let l = KClass::basis_element(&x1, i);
                let chow = l.chern_character().mul(&todd_class(&x1)).integrate();
                let k: BigInt = l.euler_characteristic();
                VerificationCase::compare(name, rational_string(&chow), k)
            }));
        }
    }
    jobs
}

fn jobs_for(suite: Suite, zoo: &Zoo, field: Field) -> Vec<Job> {
    match suite {
        Suite::Lefschetz => lefschetz_jobs(zoo, field),
        Suite::Hrr => hrr_jobs(zoo, field),
        Suite::Grr => grr_jobs(zoo),
        Suite::Eq12 => eq12_jobs(zoo),
        Suite::Properties => properties_jobs(zoo, field),
    }
}

/// Names of the cases a suite would run on `zoo`.
pub fn case_names(suite: Suite, zoo: &Zoo) -> Vec<String> {
    jobs_for(suite, zoo, Field::Rationals).into_iter().map(|j| j.name).collect()
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

fn execute(jobs: Vec<Job>, threads: Option<usize>) -> Vec<(VerificationCase, f64)> {
    let run = || {
        jobs.par_iter()
            .map(|j| {
                let t = Instant::now();
                let case = match catch_unwind(AssertUnwindSafe(|| (j.check)())) {
                    Ok(c) => c,
                    Err(p) => VerificationCase::error(&j.name, format!("internal: {}", panic_message(p))),
                };
                (case, t.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

fn run_raw(suite: Suite, zoo: &Zoo, field: Field, config: &Config) -> (VerificationReport, Timing) {
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0);
    let clock = Instant::now();
    let jobs: Vec<Job> = jobs_for(suite, zoo, field)
        .into_iter()
        .filter(|j| selected(&j.name, &config.case))
        .collect();
    let results = execute(jobs, config.jobs);
    let (cases, times): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let report = VerificationReport::new(suite.name(), &field.to_string(), cases);
    let timing = Timing {
        started_unix_ms: started,
        wall_ms: clock.elapsed().as_secs_f64() * 1e3,
        case_wall_ms: times,
    };
    (report, timing)
}

/// Integers in the rational run, reduced mod `p`.
fn reconcile(fp: VerificationReport, q: &VerificationReport, field: Field) -> VerificationReport {
    let cases = fp
        .cases
        .into_iter()
        .zip(&q.cases)
        .map(|(mut c, qc)| {
            debug_assert_eq!(c.name, qc.name);
            if c.verdict != Verdict::Pass {
                return c;
            }
            let Some(n) = qc.lhs.as_deref().and_then(|s| s.parse::<BigInt>().ok()) else {
                return c;
            };
            let reduced = field.from_bigint(&n).to_string();
            let same = c.lhs.as_deref() == Some(reduced.as_str()) || c.lhs.as_deref() == qc.lhs.as_deref();
            if !same {
                c.verdict = Verdict::Fail;
                c.reason = Some(format!("disagrees with the rational run ({n}, i.e. {reduced} mod p)"));
            }
            c
        })
        .collect();
    VerificationReport::new(&fp.suite, &fp.field, cases)
}

/// Runs one suite. Over `F_p` the algebraic suites are also run over `Q` and
/// every integer value is checked mod `p`; the Chow-theoretic suites always
/// run over `Q`.
pub fn run_suite(suite: Suite, zoo: &Zoo, config: &Config) -> (VerificationReport, Timing) {
    if !suite.algebraic() || config.field == Field::Rationals {
        return run_raw(suite, zoo, Field::Rationals, config);
    }
    let (fp, mut timing) = run_raw(suite, zoo, config.field, config);
    let (q, q_timing) = run_raw(suite, zoo, Field::Rationals, config);
    timing.wall_ms += q_timing.wall_ms;
    (reconcile(fp, &q, config.field), timing)
}
