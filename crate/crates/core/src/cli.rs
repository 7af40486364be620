//! Check registry, configuration and reports for the `mickelsson` binary.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::envelope::check_xe_identity;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::hecke::{build_hecke_action, check_glm_commutation, check_hecke_relations, hecke_test_weights};
use crate::modules::{generic_weight, q, ModuleRef, Natural, Verma, Weight};
use crate::olshanski::{check_arol, check_nonvanishing, check_nonvanishing_random, check_stability, Partition};
use crate::perm::Permutation;
use crate::report::{Mutations, Outcome};
use crate::weyl::compositions;
use crate::yangian::{
    apply_tau, check_bimequiv, check_coassociativity, check_commutant, check_evaluation_module,
    check_fused_vs_drinfeld, check_parind, check_rtt, check_tau_omega, drinfeld_action, fused_block, parind_weights,
    weight_json, ParindConfig,
};
use crate::zhelobenko::{check_braid, check_intertwines, check_isis, check_well_defined, phi_identity_check};

pub const CHECKS: [&str; 17] = [
    "hecke",
    "glm-commute",
    "drinfeld-rtt",
    "fused-rtt",
    "fused-vs-drinfeld",
    "commutant",
    "xe-identity",
    "parind",
    "bimequiv",
    "tau-omega",
    "braid",
    "isis",
    "intertwine",
    "phi",
    "arol",
    "stability",
    "nonvanishing",
];

/// One check invocation. Absent keys take per-check defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// Number of tensor slots.
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<u32>,
    /// Series order K: generators T^{(s+1)} with s ≤ K.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qcap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    /// "natural", "verma" or "both".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    /// Comma-separated mutation names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
}

impl CheckConfig {
    pub fn named(check: &str) -> Self {
        CheckConfig { check: check.to_string(), ..Default::default() }
    }

    pub fn mutations(&self) -> Result<Mutations> {
        let mut out = Mutations::none();
        for name in self.mutation.as_deref().unwrap_or("none").split(',') {
            let m = Mutations::parse(name.trim()).ok_or_else(|| Error::Config(format!("unknown mutation {name:?}")))?;
            out.flip_combact_sign |= m.flip_combact_sign;
            out.drop_hecke_unit |= m.drop_hecke_unit;
            out.omit_one_minus_z |= m.omit_one_minus_z;
        }
        Ok(out)
    }

    /// Rejects unknown checks and unparsable keys before anything runs.
    pub fn validate(&self) -> Result<()> {
        if !CHECKS.contains(&self.check.as_str()) {
            return Err(Error::Config(format!("unknown check {:?}", self.check)));
        }
        self.mutations()?;
        if let Some(s) = &self.sigma {
            Permutation::new(s.clone())?;
        }
        if let Some(m) = &self.module {
            if !["natural", "verma", "both"].contains(&m.as_str()) {
                return Err(Error::Config(format!("unknown module {m:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub elapsed_ms: u64,
    pub witnesses: Vec<Value>,
    /// Set when the check rejected its parameters; maps to exit code 2.
    #[serde(skip)]
    pub config_error: bool,
}

impl CheckReport {
    pub fn exit_code(&self) -> u8 {
        match (self.config_error, self.status) {
            (true, _) => 2,
            (false, Status::Pass) => 0,
            _ => 1,
        }
    }
}

/// Resolved parameters: every key read is echoed into `params`.
struct Params<'a> {
    cfg: &'a CheckConfig,
    echo: serde_json::Map<String, Value>,
}

impl<'a> Params<'a> {
    fn new(cfg: &'a CheckConfig) -> Self {
        Params { cfg, echo: serde_json::Map::new() }
    }

    fn put<T: Serialize>(&mut self, k: &str, v: T) -> T {
        self.echo.insert(k.into(), serde_json::to_value(&v).expect("param json"));
        v
    }

    fn m(&mut self, d: usize) -> usize {
        self.put("m", self.cfg.m.unwrap_or(d))
    }
    fn n(&mut self, d: usize) -> usize {
        self.put("n", self.cfg.n.unwrap_or(d))
    }
    fn l(&mut self, d: usize) -> usize {
        self.put("l", self.cfg.l.unwrap_or(d))
    }
    fn slots(&mut self, d: usize) -> usize {
        self.put("N", self.cfg.slots.unwrap_or(d))
    }
    fn deg(&mut self, d: u32) -> u32 {
        self.put("deg", self.cfg.deg.unwrap_or(d))
    }
    fn order(&mut self, d: usize) -> usize {
        self.put("order", self.cfg.order.unwrap_or(d))
    }
    fn seed(&mut self, d: u64) -> u64 {
        self.put("seed", self.cfg.seed.unwrap_or(d))
    }
    fn mu(&mut self, m: usize, d: impl FnOnce() -> Weight) -> Result<Weight> {
        let mu = self.cfg.mu.clone().unwrap_or_else(d);
        if mu.len() != m {
            return Err(Error::Config(format!("mu needs {m} entries, got {}", mu.len())));
        }
        self.put("mu", weight_json(&mu));
        Ok(mu)
    }
    fn nu(&mut self, m: usize, d: Vec<u32>) -> Result<Vec<u32>> {
        let nu = self.put("nu", self.cfg.nu.clone().unwrap_or(d));
        if nu.len() != m {
            return Err(Error::Config(format!("nu needs {m} entries, got {}", nu.len())));
        }
        Ok(nu)
    }
    fn sigma(&mut self, d: Permutation) -> Result<Permutation> {
        let s = match &self.cfg.sigma {
            Some(v) => Permutation::new(v.clone())?,
            None => d,
        };
        self.put("sigma", s.images().to_vec());
        Ok(s)
    }
    fn module(&mut self, d: &str) -> String {
        self.put("module", self.cfg.module.clone().unwrap_or_else(|| d.to_string()))
    }
}

fn add_nu(mu: &[Rational], nu: &[u32]) -> Weight {
    mu.iter().zip(nu).map(|(x, &e)| x + &q(e as i64)).collect()
}

fn nus_up_to(m: usize, deg: u32) -> Vec<Vec<u32>> {
    (0..=deg).flat_map(|d| compositions(d, m)).collect()
}

fn verma(mu: &Weight, cap: u32) -> ModuleRef {
    Arc::new(Verma::new(mu.clone(), cap))
}

/// The (V, highest weight) pairs selected by the `module` key.
fn hecke_modules(kind: &str, m: usize, mu: &Weight, cap: u32) -> Vec<(&'static str, ModuleRef, Weight)> {
    let mut out: Vec<(&'static str, ModuleRef, Weight)> = Vec::new();
    if kind != "verma" {
        let mut top = vec![q(0); m];
        top[0] = q(1);
        out.push(("natural", Arc::new(Natural { k: m }), top));
    }
    if kind != "natural" {
        out.push(("verma", verma(mu, cap), mu.clone()));
    }
    out
}

fn run_hecke(p: &mut Params, mutations: Mutations, glm: bool) -> Result<Outcome> {
    let m = p.m(2);
    let count = p.slots(3);
    let depth = p.deg(2) as usize;
    let kind = p.module("both");
    let mu = p.mu(m, || generic_weight(m))?;
    let mut out = Outcome::new();
    for (name, v, top) in hecke_modules(&kind, m, &mu, (depth + count * m + 2) as u32) {
        let mut blocks = 0usize;
        for w in hecke_test_weights(&top, count, depth) {
            let o = if glm {
                check_glm_commutation(v.clone(), count, &w)?
            } else {
                let h = build_hecke_action(v.clone(), count, &w)?;
                if h.dim() == 0 {
                    continue;
                }
                check_hecke_relations(&h, mutations)
            };
            blocks += 1;
            if !o.pass {
                out.info(json!({"module": name, "weight": weight_json(&w)}));
            }
            out.absorb(o);
        }
        out.info(json!({"module": name, "blocks": blocks}));
    }
    Ok(out)
}

fn run_drinfeld_rtt(p: &mut Params) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let count = p.slots(2);
    let k = p.order(4);
    let depth = p.deg(1) as usize;
    let mu = p.mu(m, || generic_weight(m))?;
    let v = verma(&mu, (depth + count * m + 2) as u32);
    let mut out = Outcome::new();
    for w in hecke_test_weights(&mu, count, depth) {
        let h = build_hecke_action(v.clone(), count, &w)?;
        if h.dim() == 0 {
            continue;
        }
        let (inv, y) = drinfeld_action(&h, n, k + 1)?;
        let o = check_rtt(&y, k);
        if !o.pass {
            out.info(json!({"weight": weight_json(&w)}));
        }
        out.absorb(o);
        out.info(json!({"weight": weight_json(&w), "dim_invariants": inv.dim()}));
    }
    Ok(out)
}

/// RTT on E_m(M_μ) blocks μ+ν, |ν| ≤ deg; for n = 1 all generators commute.
fn run_fused_rtt(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let deg = p.deg(4);
    let k = p.order(4);
    let mu = p.mu(m, || generic_weight(m))?;
    let v = verma(&mu, m as u32 * deg + 2);
    let mut out = Outcome::new();
    for nu in nus_up_to(m, deg) {
        let (b, y) = fused_block(&v, n, deg, &add_nu(&mu, &nu), k + 1, mutations)?;
        let o = check_rtt(&y, k);
        if !o.pass {
            out.info(json!({"nu": nu}));
        }
        out.absorb(o);
        if n == 1 {
            for r in 1..=k + 1 {
                for s in r + 1..=k + 1 {
                    out.require(
                        y.t_ref(r, 1, 1).commutator(y.t_ref(s, 1, 1)).is_zero(),
                        || json!({"violation": "n = 1 generators do not commute", "nu": nu, "r": r, "s": s}),
                    );
                }
            }
        }
        out.info(json!({"nu": nu, "dim": b.dim()}));
    }
    Ok(out)
}

fn run_fused_vs_drinfeld(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let count = p.slots(2);
    let k = p.order(4);
    let mu = p.mu(m, || generic_weight(m))?;
    let v = verma(&mu, (count * m + 2) as u32);
    let mut out = Outcome::new();
    for eta in compositions(count as u32, m) {
        out.absorb(check_fused_vs_drinfeld(&v, n, &add_nu(&mu, &eta), k + 1, mutations)?);
    }
    Ok(out)
}

fn run_commutant(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let deg = p.deg(3);
    let k = p.order(3);
    let mu = p.mu(m, || generic_weight(m))?;
    let v = verma(&mu, m as u32 * deg + 4);
    let mut out = Outcome::new();
    for nu in nus_up_to(m, deg) {
        out.absorb(check_commutant(&v, n, deg, &add_nu(&mu, &nu), k + 1, mutations)?);
    }
    Ok(out)
}

fn run_xe(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let l = p.l(1);
    let k = p.order(4);
    Ok(check_xe_identity(m, l, k, mutations))
}

fn run_parind(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(1);
    let l = p.l(1);
    let n = p.n(2);
    let deg = p.deg(3);
    let qcap = p.put("qcap", p.cfg.qcap.unwrap_or(2));
    let k = p.order(3);
    let mu = p.mu(m + l, || vec![Rational::new(1, 3), Rational::new(1, 5)])?;
    let cap = deg + qcap + 2;
    let (tv, tu) = (mu[..m].to_vec(), mu[m..].to_vec());
    let (v, u) = (verma(&tv, cap), verma(&tu, cap));
    let cfg = ParindConfig { n, deg, qcap, order: k };
    check_parind(&v, &u, &parind_weights(&tv, &tu, deg), &cfg, mutations)
}

fn run_bimequiv(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let deg = p.deg(2);
    let k = p.order(3);
    let mu = p.mu(m, || generic_weight(m))?;
    check_bimequiv(&mu, n, deg, k + 1, mutations)
}

fn run_tau_omega(p: &mut Params) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let k = p.order(4);
    let mu = p.mu(m, || generic_weight(m))?;
    let nu = p.nu(m, {
        let mut v = vec![0; m];
        v[0] = 1;
        v
    })?;
    let deg: u32 = nu.iter().sum();
    let v = verma(&mu, m as u32 * deg + 2);
    let (_, y) = fused_block(&v, n, deg, &add_nu(&mu, &nu), k + 1, Mutations::none())?;
    let mut out = check_tau_omega(&y, &Rational::new(3, 2))?;
    let t = &mu[0];
    let e1 = verma(&vec![t.clone()], 0);
    let (_, a) = fused_block(&e1, n, 1, &[t + &q(1)], k, Mutations::none())?;
    let (_, b) = fused_block(&e1, n, 0, std::slice::from_ref(t), k, Mutations::none())?;
    out.absorb(check_coassociativity(&a, &apply_tau(&a, &q(1)), &b));
    out.absorb(check_evaluation_module(t, n, 2, k + 1)?);
    Ok(out)
}

fn longest(m: usize) -> Permutation {
    Permutation::new((1..=m).rev().collect()).expect("reversal")
}

fn run_braid(p: &mut Params) -> Result<Outcome> {
    let m = p.m(3);
    let n = p.n(1);
    let mu = p.mu(m, || generic_weight(m))?;
    let nu = p.nu(m, (0..m).map(|a| u32::from(a + 1 < m)).collect())?;
    check_braid(&mu, &nu, n)
}

fn run_isis(p: &mut Params) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(1);
    let mu = p.mu(m, || generic_weight(m))?;
    let mut d = vec![0; m];
    d[m - 1] = 1;
    let nu = p.nu(m, d)?;
    let sigma = p.sigma(longest(m))?;
    check_isis(&sigma, &mu, &nu, n)
}

/// I_σ intertwines on every block μ+ν with |ν| ≤ deg, and ξ_c is well defined there.
fn run_intertwine(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let deg = p.deg(2);
    let k = p.order(3);
    let mu = p.mu(m, || generic_weight(m))?;
    let sigma = p.sigma(longest(m))?;
    let mut out = Outcome::new();
    for nu in nus_up_to(m, deg) {
        out.absorb(check_intertwines(&sigma, &mu, &nu, n, k, mutations)?);
        for c in 1..m {
            out.absorb(check_well_defined(c, &mu, &nu, n)?);
        }
    }
    Ok(out)
}

fn run_phi(p: &mut Params) -> Result<Outcome> {
    let d_max = p.put("d_max", p.cfg.d_max.unwrap_or(6));
    let samples = p.put("samples", p.cfg.samples.unwrap_or(10));
    let seed = p.seed(1);
    Ok(phi_identity_check(d_max, samples, seed))
}

fn run_arol(p: &mut Params, mutations: Mutations) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let l = p.l(1);
    let deg = p.deg(3);
    let k = p.order(3);
    check_arol(m, n, l, deg, k, mutations)
}

/// ϖ_j β_j = β_{j−1} for every j = 1..l.
fn run_stability(p: &mut Params) -> Result<Outcome> {
    let m = p.m(2);
    let n = p.n(2);
    let l = p.l(2);
    let deg = p.deg(3);
    let k = p.order(3);
    let mut out = Outcome::new();
    for j in 1..=l {
        out.absorb(check_stability(m, n, j, deg, k)?);
    }
    Ok(out)
}

fn run_nonvanishing(p: &mut Params) -> Result<Outcome> {
    let n = p.n(1);
    match &p.cfg.lambda {
        Some(lam) => {
            let lambda = Partition::new(lam)?;
            let mu_parts: Vec<u32> = p
                .cfg
                .mu
                .clone()
                .unwrap_or_default()
                .iter()
                .map(|x| x.to_i64().filter(|&v| v >= 0).map(|v| v as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Config("mu must be a partition for nonvanishing".into()))?;
            let mu = Partition::new(&mu_parts)?;
            p.put("lambda", lambda.parts().to_vec());
            p.put("mu", mu.parts().to_vec());
            check_nonvanishing(&lambda, &mu, n)
        }
        None => {
            let cases = p.put("cases", p.cfg.cases.unwrap_or(10));
            let seed = p.seed(1);
            check_nonvanishing_random(cases, seed)
        }
    }
}

fn dispatch(cfg: &CheckConfig, p: &mut Params) -> Result<Outcome> {
    let mutations = cfg.mutations()?;
    if !mutations.is_none() {
        p.put("mutation", cfg.mutation.clone());
    }
    match cfg.check.as_str() {
        "hecke" => run_hecke(p, mutations, false),
        "glm-commute" => run_hecke(p, mutations, true),
        "drinfeld-rtt" => run_drinfeld_rtt(p),
        "fused-rtt" => run_fused_rtt(p, mutations),
        "fused-vs-drinfeld" => run_fused_vs_drinfeld(p, mutations),
        "commutant" => run_commutant(p, mutations),
        "xe-identity" => run_xe(p, mutations),
        "parind" => run_parind(p, mutations),
        "bimequiv" => run_bimequiv(p, mutations),
        "tau-omega" => run_tau_omega(p),
        "braid" => run_braid(p),
        "isis" => run_isis(p),
        "intertwine" => run_intertwine(p, mutations),
        "phi" => run_phi(p),
        "arol" => run_arol(p, mutations),
        "stability" => run_stability(p),
        "nonvanishing" => run_nonvanishing(p),
        other => Err(Error::Config(format!("unknown check {other:?}"))),
    }
}

/// Runs one check. Configuration errors should be caught by `validate` first;
/// anything raised while computing becomes an `error` report.
pub fn run(cfg: &CheckConfig) -> CheckReport {
    let start = Instant::now();
    let mut p = Params::new(cfg);
    let result = dispatch(cfg, &mut p);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let config_error = matches!(result, Err(Error::Config(_)));
    let (status, witnesses) = match result {
        Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.witnesses),
        Err(e) => {
            let mut w = json!({"error": e.to_string()});
            if matches!(e, Error::CapExceeded(_)) {
                w["advice"] = json!("raise the degree caps (deg, qcap) for this check");
            }
            (Status::Error, vec![w])
        }
    };
    CheckReport { check: cfg.check.clone(), params: Value::Object(p.echo), status, elapsed_ms, witnesses, config_error }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub checks: Vec<CheckConfig>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn exit_code(&self) -> u8 {
        self.reports.iter().map(CheckReport::exit_code).max().unwrap_or(0)
    }
}

pub fn parse_suite(text: &str) -> Result<SuiteConfig> {
    let suite: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed suite: {e}")))?;
    for c in &suite.checks {
        c.validate()?;
    }
    Ok(suite)
}

/// Runs every check on a pool of `jobs` threads; report order follows the suite.
pub fn run_suite(suite: &SuiteConfig, jobs: usize) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let reports: Vec<CheckReport> = pool.install(|| suite.checks.par_iter().map(run).collect());
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (passed, failed, errors) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
    let status = if failed + errors == 0 {
        Status::Pass
    } else if errors > 0 && failed == 0 {
        Status::Error
    } else {
        Status::Fail
    };
    Ok(SuiteReport { status, passed, failed, errors, reports })
}

/// The default configuration of every registered check.
pub fn default_suite() -> SuiteConfig {
    SuiteConfig { checks: CHECKS.iter().map(|c| CheckConfig::named(c)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_seventeen_checks() {
        assert_eq!(CHECKS.len(), 17);
        assert!(CheckConfig::named("nope").validate().is_err());
        assert!(CheckConfig::named("phi").validate().is_ok());
        let mut c = CheckConfig::named("phi");
        c.mutation = Some("flip-sign".into());
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_round_trip() {
        let c: CheckConfig =
            serde_json::from_str(r#"{"check":"isis","m":2,"n":1,"mu":["1/3","0"],"nu":[0,1],"N":2}"#).unwrap();
        assert_eq!(c.mu, Some(vec![Rational::new(1, 3), Rational::from_int(0)]));
        assert_eq!(c.slots, Some(2));
        assert!(serde_json::from_str::<CheckConfig>(r#"{"check":"phi","bogus":1}"#).is_err());
    }

    #[test]
    fn isis_reports_quarter() {
        let c: CheckConfig =
            serde_json::from_str(r#"{"check":"isis","m":2,"n":1,"mu":["1/3","0"],"nu":[0,1]}"#).unwrap();
        let r = run(&c);
        assert_eq!(r.status, Status::Pass);
        assert!(r.witnesses.iter().any(|w| w["scalar"] == "1/4"));
    }

    #[test]
    fn phi_and_hecke_examples() {
        let c: CheckConfig = serde_json::from_str(r#"{"check":"phi","d_max":4,"samples":10,"seed":1}"#).unwrap();
        assert_eq!(run(&c).status, Status::Pass);
        let c: CheckConfig = serde_json::from_str(r#"{"check":"hecke","m":1,"N":3}"#).unwrap();
        assert_eq!(run(&c).status, Status::Pass);
    }

    #[test]
    fn cap_and_genericity_errors() {
        let c: CheckConfig = serde_json::from_str(r#"{"check":"isis","mu":["1","0"],"nu":[0,1]}"#).unwrap();
        let r = run(&c);
        assert_eq!(r.status, Status::Error);
        assert!(r.witnesses[0]["error"].as_str().unwrap().contains("non-generic"));
    }

    #[test]
    fn empty_suite_passes() {
        let s = parse_suite(r#"{"checks": []}"#).unwrap();
        let r = run_suite(&s, 2).unwrap();
        assert_eq!(r.exit_code(), 0);
        let bad = parse_suite(r#"{"checks": [{"check": "isis", "mu": ["1/3"]}]}"#).unwrap();
        assert_eq!(run_suite(&bad, 1).unwrap().exit_code(), 2);
        assert!(parse_suite("{").is_err());
        assert!(parse_suite(r#"{"checks":[{"check":"nope"}]}"#).is_err());
    }
}
