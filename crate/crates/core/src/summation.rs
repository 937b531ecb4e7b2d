//! Summation methods for divergent series and a harness for their axioms.
//!
//! Every method reads at most `budget` terms and decides from a handful of
//! checkpoints. The means of the series families used here (periodic signs
//! times polynomials, geometric tails) behave like `s + c₁/n + c₂/n²` on each
//! residue class mod 12, so the limit is extrapolated per class and the classes
//! are required to agree. `NotSummable` is a verdict relative to the budget,
//! not a theorem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::cec::{complex_closed_form, AlgebraSpec};
use crate::characteristic::Variant;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::numeric::{self, AbelSchedule, Limit};
use crate::ring::{int, rat, Rational};
use crate::series::TruncatedSeries;

pub const DEFAULT_BUDGET: usize = 1 << 16;
pub const DEFAULT_TOL: f64 = 1e-7;
const PERIOD: usize = 12;

type ExactFn = dyn Fn(usize) -> Rational + Send + Sync;
type FloatFn = dyn Fn(usize) -> f64 + Send + Sync;

#[derive(Clone)]
enum Source {
    /// Exact terms, optionally with a cheap float rendering of the same terms.
    Exact(Arc<ExactFn>, Option<Arc<FloatFn>>),
    Numeric(Arc<Vec<f64>>),
}

/// A lazily generated sequence of terms `a_0, a_1, …`.
#[derive(Clone)]
pub struct TermStream {
    name: String,
    source: Source,
    /// Number of terms that exist; `None` for an infinite (or zero-padded) stream.
    available: Option<usize>,
    cache: Arc<Mutex<Vec<f64>>>,
}

impl fmt::Debug for TermStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TermStream({})", self.name)
    }
}

impl TermStream {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        TermStream { name: name.into(), source: Source::Exact(Arc::new(f), None), available: None, cache: Default::default() }
    }

    /// Like [`TermStream::new`], with `float(n)` agreeing with `exact(n)` to rounding.
    pub fn with_float<F, G>(name: impl Into<String>, exact: F, float: G) -> Self
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
        G: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        TermStream {
            name: name.into(),
            source: Source::Exact(Arc::new(exact), Some(Arc::new(float))),
            available: None,
            cache: Default::default(),
        }
    }

    fn float_fn(&self) -> Arc<FloatFn> {
        match &self.source {
            Source::Exact(_, Some(g)) => g.clone(),
            Source::Exact(f, None) => {
                let f = f.clone();
                Arc::new(move |n| f(n).to_f64().unwrap_or(f64::NAN))
            }
            Source::Numeric(v) => {
                let v = v.clone();
                Arc::new(move |n| v.get(n).copied().unwrap_or(f64::NAN))
            }
        }
    }

    /// Finitely many terms followed by zeros.
    pub fn finite(name: impl Into<String>, terms: Vec<Rational>) -> Self {
        TermStream::new(name, move |n| terms.get(n).cloned().unwrap_or_else(Rational::zero))
    }

    /// A prefix of a longer sequence; nothing is known past `terms.len()`.
    pub fn prefix(name: impl Into<String>, terms: Vec<Rational>) -> Self {
        let len = terms.len();
        let mut s = TermStream::finite(name, terms);
        s.available = Some(len);
        s
    }

    /// Floating-point prefix, for derived streams such as Cauchy products.
    pub fn numeric_prefix(name: impl Into<String>, terms: Vec<f64>) -> Self {
        let len = terms.len();
        TermStream {
            name: name.into(),
            source: Source::Numeric(Arc::new(terms)),
            available: Some(len),
            cache: Default::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn available(&self) -> Option<usize> {
        self.available
    }

    /// Exact term, when the stream has one.
    pub fn term(&self, n: usize) -> Option<Rational> {
        if self.available.is_some_and(|a| n >= a) {
            return None;
        }
        match &self.source {
            Source::Exact(f, _) => Some(f(n)),
            Source::Numeric(_) => None,
        }
    }

    /// First `min(budget, available)` terms as floats.
    pub fn values(&self, budget: usize) -> Vec<f64> {
        let len = self.available.map_or(budget, |a| a.min(budget));
        match &self.source {
            Source::Numeric(v) => v[..len].to_vec(),
            Source::Exact(..) => {
                let g = self.float_fn();
                let mut cache = self.cache.lock().expect("poisoned cache");
                for n in cache.len()..len {
                    cache.push(g(n));
                }
                cache[..len].to_vec()
            }
        }
    }

    /// `λ·a + μ·b`.
    pub fn combine(lambda: &Rational, a: &TermStream, mu: &Rational, b: &TermStream) -> TermStream {
        let name = format!("{lambda}·{} + {mu}·{}", a.name, b.name);
        let available = match (a.available, b.available) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        match (&a.source, &b.source) {
            (Source::Exact(f, _), Source::Exact(g, _)) => {
                let (f, g, l, m) = (f.clone(), g.clone(), lambda.clone(), mu.clone());
                let (ff, gf) = (a.float_fn(), b.float_fn());
                let (lf, mf) = (lambda.to_f64().unwrap_or(f64::NAN), mu.to_f64().unwrap_or(f64::NAN));
                let mut s = TermStream::with_float(name, move |n| &l * f(n) + &m * g(n), move |n| lf * ff(n) + mf * gf(n));
                s.available = available;
                s
            }
            _ => {
                let len = available.unwrap_or(DEFAULT_BUDGET);
                let (l, m) = (lambda.to_f64().unwrap_or(f64::NAN), mu.to_f64().unwrap_or(f64::NAN));
                let v = a.values(len).iter().zip(b.values(len)).map(|(x, y)| l * x + m * y).collect();
                TermStream::numeric_prefix(name, v)
            }
        }
    }

    /// `a_1, a_2, …`
    pub fn drop_first(&self) -> TermStream {
        let name = format!("{} from n = 1", self.name);
        let available = self.available.map(|a| a.saturating_sub(1));
        match &self.source {
            Source::Exact(f, _) => {
                let (f, g) = (f.clone(), self.float_fn());
                let mut s = TermStream::with_float(name, move |n| f(n + 1), move |n| g(n + 1));
                s.available = available;
                s
            }
            Source::Numeric(v) => TermStream::numeric_prefix(name, v.get(1..).unwrap_or(&[]).to_vec()),
        }
    }

    /// First `len` terms of the Cauchy product, by FFT convolution.
    pub fn cauchy(a: &TermStream, b: &TermStream, len: usize) -> TermStream {
        let x = a.values(len);
        let y = b.values(len);
        let n = x.len().min(y.len());
        let size = (2 * n).next_power_of_two().max(1);
        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(size);
        let inv = planner.plan_fft_inverse(size);
        let pad = |v: &[f64]| {
            let mut out: Vec<Complex<f64>> = v[..n].iter().map(|&r| Complex::new(r, 0.0)).collect();
            out.resize(size, Complex::new(0.0, 0.0));
            out
        };
        let (mut fx, mut fy) = (pad(&x), pad(&y));
        fwd.process(&mut fx);
        fwd.process(&mut fy);
        let mut prod: Vec<_> = fx.iter().zip(&fy).map(|(p, q)| p * q).collect();
        inv.process(&mut prod);
        let terms = prod[..n].iter().map(|c| c.re / size as f64).collect();
        TermStream::numeric_prefix(format!("({}) * ({})", a.name, b.name), terms)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SumOutcome {
    Summed(f64),
    NotSummable,
    BudgetExceeded,
}

impl SumOutcome {
    pub fn value(&self) -> Option<f64> {
        match *self {
            SumOutcome::Summed(v) => Some(v),
            _ => None,
        }
    }
}

type CustomFn = dyn Fn(&[f64]) -> SumOutcome + Send + Sync;

#[derive(Clone)]
enum Kind {
    Cesaro(u32),
    Euler,
    Abel(Option<AbelSchedule>),
    DropFirst(Box<SummationMethod>),
    Custom(Arc<CustomFn>),
}

#[derive(Clone)]
pub struct SummationMethod {
    name: String,
    kind: Kind,
    budget: usize,
    tol: f64,
}

impl fmt::Debug for SummationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SummationMethod({}, budget {})", self.name, self.budget)
    }
}

/// `(C, k)`: Cesàro means of order `k`; order 0 is ordinary convergence.
pub fn cesaro(k: u32) -> SummationMethod {
    SummationMethod { name: format!("cesaro:{k}"), kind: Kind::Cesaro(k), budget: DEFAULT_BUDGET, tol: DEFAULT_TOL }
}

/// `(E, 1)`: binomial means `2^{-n} Σ C(n, j) s_j` of the partial sums.
pub fn euler_transform() -> SummationMethod {
    SummationMethod { name: "euler".into(), kind: Kind::Euler, budget: DEFAULT_BUDGET, tol: DEFAULT_TOL }
}

/// Abel's `lim_{x → 1-} Σ a_n x^n`; `None` picks the longest dyadic schedule within budget.
pub fn abel_numeric_method(schedule: Option<AbelSchedule>) -> SummationMethod {
    SummationMethod { name: "abel".into(), kind: Kind::Abel(schedule), budget: DEFAULT_BUDGET, tol: DEFAULT_TOL }
}

/// A deliberately broken method: `inner` applied after discarding `a_0`.
pub fn drop_first(inner: SummationMethod) -> SummationMethod {
    SummationMethod {
        name: format!("drop-first({})", inner.name),
        budget: inner.budget,
        tol: inner.tol,
        kind: Kind::DropFirst(Box::new(inner)),
    }
}

/// A user-supplied method acting on the float terms.
pub fn custom<F>(name: impl Into<String>, f: F) -> SummationMethod
where
    F: Fn(&[f64]) -> SumOutcome + Send + Sync + 'static,
{
    SummationMethod { name: name.into(), kind: Kind::Custom(Arc::new(f)), budget: DEFAULT_BUDGET, tol: DEFAULT_TOL }
}

impl SummationMethod {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        if let Kind::DropFirst(inner) = &mut self.kind {
            **inner = inner.as_ref().clone().with_budget(budget);
        }
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Parses `abel`, `euler` or `cesaro:k`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "abel" => Ok(abel_numeric_method(None)),
            "euler" => Ok(euler_transform()),
            _ => s
                .strip_prefix("cesaro:")
                .and_then(|k| k.parse::<u32>().ok())
                .map(cesaro)
                .ok_or_else(|| Error::Parse(format!("unknown method {s:?}"))),
        }
    }

    pub fn sum(&self, s: &TermStream) -> SumOutcome {
        match &self.kind {
            Kind::DropFirst(inner) => inner.sum(&s.drop_first()),
            Kind::Custom(f) => f(&s.values(self.budget)),
            Kind::Cesaro(k) => sum_cesaro(&s.values(self.budget), *k, self.tol),
            Kind::Euler => sum_euler(&s.values(self.budget), self.tol),
            Kind::Abel(schedule) => {
                let terms = s.values(self.budget);
                let schedule = match schedule {
                    Some(sch) if sch.max_order() < terms.len() => sch.clone(),
                    Some(_) => return SumOutcome::BudgetExceeded,
                    None => {
                        if terms.len() < 64 {
                            return SumOutcome::BudgetExceeded;
                        }
                        AbelSchedule::within_budget(terms.len())
                    }
                };
                match numeric::abel_limit(&terms, &schedule) {
                    Limit::Converged(v) => SumOutcome::Summed(v),
                    Limit::Diverging => SumOutcome::NotSummable,
                    Limit::Undecided(_) => SumOutcome::BudgetExceeded,
                }
            }
        }
    }
}

enum Estimate {
    Stable(f64),
    Converging,
    Wandering,
}

/// Decides the limit of `mean(n)` for `n < len`, sampling only checkpoints.
fn estimate(mean: &dyn Fn(usize) -> f64, len: usize, tol: f64) -> Estimate {
    let a_max = len.saturating_sub(PERIOD) / (4 * PERIOD);
    if a_max < 4 {
        // Too short for extrapolation: accept only a sequence that has already settled.
        if len < 2 * PERIOD {
            return Estimate::Converging;
        }
        let tail: Vec<f64> = (len - PERIOD..len).map(mean).collect();
        let (lo, hi) = tail.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        return if hi - lo < tol { Estimate::Stable(tail[PERIOD - 1]) } else { Estimate::Converging };
    }
    let level = |a: usize| -> Vec<f64> {
        (0..PERIOD)
            .map(|r| {
                let ns = [a * PERIOD + r, 2 * a * PERIOD + r, 4 * a * PERIOD + r];
                let x = ns.map(|n| 1.0 / (n as f64 + 1.0));
                numeric::extrapolate3(x, ns.map(mean))
            })
            .collect()
    };
    let levels = [level(a_max), level(a_max / 2), level(a_max / 4)];
    if levels.iter().flatten().any(|v| !v.is_finite()) {
        return Estimate::Wandering;
    }
    let spread = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
        hi - lo
    };
    let dev = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let (s0, s1) = (spread(&levels[0]), spread(&levels[1]));
    let (d0, d1) = (dev(&levels[0], &levels[1]), dev(&levels[1], &levels[2]));
    if s0 < tol && d0 < tol {
        return Estimate::Stable(levels[0].iter().sum::<f64>() / PERIOD as f64);
    }
    let shrinking = |now: f64, before: f64| now < tol || now <= 0.5 * before;
    if shrinking(s0, s1) && shrinking(d0, d1) {
        Estimate::Converging
    } else {
        Estimate::Wandering
    }
}

fn outcome(e: Estimate) -> SumOutcome {
    match e {
        Estimate::Stable(v) => SumOutcome::Summed(v),
        Estimate::Converging => SumOutcome::BudgetExceeded,
        Estimate::Wandering => SumOutcome::NotSummable,
    }
}

/// Cesàro means `σ^k_n = S^{(k+1)}_n / C(n+k, k)` with `S^{(1)}` the partial sums.
fn cesaro_means(terms: &[f64], k: u32) -> Vec<f64> {
    let mut acc = terms.to_vec();
    for _ in 0..=k {
        let mut run = 0.0;
        for x in acc.iter_mut() {
            run += *x;
            *x = run;
        }
    }
    acc.iter()
        .enumerate()
        .map(|(n, s)| {
            // C(n+k, k) as a float product
            let binom = (1..=k as usize).fold(1.0, |b, i| b * (n + i) as f64 / i as f64);
            s / binom
        })
        .collect()
}

/// Tries orders `0..=k` and reports the first that settles; by inclusion of
/// Cesàro methods the value is the `(C, k)` sum. Failure verdicts are those of order `k`.
fn sum_cesaro(terms: &[f64], k: u32, tol: f64) -> SumOutcome {
    let mut last = SumOutcome::BudgetExceeded;
    for j in 0..=k {
        let means = cesaro_means(terms, j);
        last = outcome(estimate(&|n| means[n], means.len(), tol));
        if matches!(last, SumOutcome::Summed(_)) {
            return last;
        }
    }
    last
}

fn sum_euler(terms: &[f64], tol: f64) -> SumOutcome {
    let mut partial = Vec::with_capacity(terms.len());
    let mut run = 0.0;
    for &t in terms {
        run += t;
        partial.push(run);
    }
    // Binomial weights normalised around the centre, so nothing overflows.
    let mean = |n: usize| -> f64 {
        let mid = n / 2;
        let mut weights = vec![0.0; n + 1];
        weights[mid] = 1.0;
        for j in mid..n {
            weights[j + 1] = weights[j] * (n - j) as f64 / (j + 1) as f64;
            if weights[j + 1] < 1e-300 {
                break;
            }
        }
        for j in (1..=mid).rev() {
            weights[j - 1] = weights[j] * j as f64 / (n - j + 1) as f64;
            if weights[j - 1] < 1e-300 {
                break;
            }
        }
        let total: f64 = weights.iter().sum();
        weights.iter().zip(&partial).map(|(w, s)| w * s).sum::<f64>() / total
    };
    outcome(estimate(&mean, partial.len(), tol))
}

/// Result of one axiom check over the corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomOutcome {
    pub holds: bool,
    pub checked: usize,
    /// First failing series with both sides of the identity.
    pub witness: Option<String>,
}

impl AxiomOutcome {
    fn new() -> Self {
        AxiomOutcome { holds: true, checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodReport {
    pub method: String,
    pub regular: AxiomOutcome,
    pub additive: AxiomOutcome,
    pub multiplicative: AxiomOutcome,
    pub left_translative: AxiomOutcome,
}

/// A corpus series with its sum, when it converges.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub stream: TermStream,
    pub limit: Option<f64>,
}

pub const AXIOM_TOL: f64 = 1e-6;

fn close(x: &SumOutcome, y: f64) -> bool {
    x.value().is_some_and(|v| (v - y).abs() < AXIOM_TOL)
}

fn show(o: &SumOutcome) -> String {
    match o {
        SumOutcome::Summed(v) => format!("{v}"),
        other => format!("{other:?}"),
    }
}

/// Checks the four axioms on the corpus. Additivity and multiplicativity use
/// consecutive pairs; identities are only tested where the inputs sum.
pub fn check_method_properties(m: &SummationMethod, corpus: &[CorpusEntry]) -> MethodReport {
    let mut regular = AxiomOutcome::new();
    let mut additive = AxiomOutcome::new();
    let mut multiplicative = AxiomOutcome::new();
    let mut left = AxiomOutcome::new();
    let sums: Vec<SumOutcome> = corpus.iter().map(|e| m.sum(&e.stream)).collect();
    for (e, s) in corpus.iter().zip(&sums) {
        if let Some(lim) = e.limit {
            regular.record(close(s, lim), || format!("{}: expected {lim}, got {}", e.stream.name(), show(s)));
        }
        if let (Some(v), Some(a0)) = (s.value(), e.stream.term(0)) {
            let a0 = a0.to_f64().unwrap_or(f64::NAN);
            let shifted = m.sum(&e.stream.drop_first());
            left.record(close(&shifted, v - a0), || {
                format!("{}: sum from n = 1 is {}, expected {}", e.stream.name(), show(&shifted), v - a0)
            });
        }
    }
    let (lambda, mu) = (int(2), rat(-3, 2));
    for i in 0..corpus.len().saturating_sub(1) {
        let (a, b) = (&corpus[i].stream, &corpus[i + 1].stream);
        let (Some(x), Some(y)) = (sums[i].value(), sums[i + 1].value()) else { continue };
        let lin = m.sum(&TermStream::combine(&lambda, a, &mu, b));
        let want = 2.0 * x - 1.5 * y;
        additive.record(close(&lin, want), || format!("2·{} - 3/2·{}: got {}, expected {want}", a.name(), b.name(), show(&lin)));
        let prod = m.sum(&TermStream::cauchy(a, b, m.budget()));
        multiplicative.record(close(&prod, x * y), || {
            format!("({}) * ({}): got {}, expected {}", a.name(), b.name(), show(&prod), x * y)
        });
    }
    MethodReport { method: m.name().into(), regular, additive, multiplicative, left_translative: left }
}

/// `1, -1, 1, -1, …`
pub fn grandi() -> TermStream {
    TermStream::new("grandi", |n| int(if n % 2 == 0 { 1 } else { -1 }))
}

/// `1, -2, 3, -4, …`
pub fn alternating_naturals() -> TermStream {
    TermStream::new("1-2+3-4", |n| int(if n % 2 == 0 { n as i64 + 1 } else { -(n as i64) - 1 }))
}

pub fn geometric(num: i64, den: i64) -> TermStream {
    let r = rat(num, den);
    let rf = num as f64 / den as f64;
    TermStream::with_float(format!("({r})^n"), move |n| num_traits::pow(r.clone(), n), move |n| rf.powi(n as i32))
}

/// Ten convergent series with their sums.
pub fn convergent_corpus() -> Vec<CorpusEntry> {
    let geo = |p: i64, q: i64| CorpusEntry { stream: geometric(p, q), limit: Some(q as f64 / (q - p) as f64) };
    // n! exceeds the float range long before 200, so the tail is below rounding.
    let inv_fact = |sign: i64| {
        TermStream::new(if sign > 0 { "1/n!" } else { "(-1)^n/n!" }, move |n| {
            if n > 200 {
                return Rational::zero();
            }
            let f = (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k);
            let s = if sign < 0 && n % 2 == 1 { -1 } else { 1 };
            Rational::new(BigInt::from(s), f)
        })
    };
    vec![
        geo(1, 2),
        geo(-1, 2),
        geo(9, 10),
        geo(-9, 10),
        geo(1, 3),
        geo(2, 3),
        CorpusEntry { stream: TermStream::finite("1 + 2 + 3", vec![int(1), int(2), int(3)]), limit: Some(6.0) },
        CorpusEntry { stream: TermStream::finite("5 - 1", vec![int(5), int(-1)]), limit: Some(4.0) },
        CorpusEntry { stream: inv_fact(1), limit: Some(std::f64::consts::E) },
        CorpusEntry { stream: inv_fact(-1), limit: Some(1.0 / std::f64::consts::E) },
    ]
}

/// `C(d + r·i + n - 1, r·i + n)` for `i = 0, 1, …`: dimensions of the
/// `n`-th residue class of `S*` of a `d`-dimensional space in a degree of order `r`.
pub fn summab_terms(d: i64, r: i64, n: i64) -> Result<TermStream> {
    if r < 2 || r % 2 != 0 || n < 0 || n >= r {
        return Err(Error::BadResidue { modulus: r, residue: n });
    }
    if d < 1 {
        return Err(Error::InvalidSpec(format!("dimension {d} must be positive")));
    }
    let (d, r, n) = (d as u64, r as u64, n as u64);
    Ok(TermStream::new(format!("summab(d={d}, r={r}, n={n})"), move |i| {
        let m = r * i as u64 + n;
        // C(d + m - 1, m) = C(d + m - 1, d - 1)
        let num = (1..d).fold(BigInt::one(), |acc, j| acc * (m + j));
        let den = (1..d).fold(BigInt::one(), |acc, j| acc * j);
        Rational::new(num, den)
    }))
}

/// Method-sense characteristic of one series, component by component.
#[derive(Clone, Debug, PartialEq)]
pub enum MethodChi {
    Exists(BTreeMap<GroupElement, f64>),
    /// Components the method cannot sum, with the reason per component.
    Fails(BTreeMap<GroupElement, SumOutcome>),
}

impl MethodChi {
    pub fn budget_exceeded(&self) -> bool {
        matches!(self, MethodChi::Fails(m) if m.values().any(|o| *o == SumOutcome::BudgetExceeded))
    }
}

/// Applies `m` to the streams `(-1)^n c_{n,α}` of each component.
///
/// The series is a prefix: components are only known up to its order.
pub fn chi_method(f: &TruncatedSeries, m: &SummationMethod) -> MethodChi {
    let streams = f.group().elements().map(|a| {
        let terms = f
            .component(&a)
            .into_iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c } else { -c })
            .collect::<Vec<_>>();
        let stream = if terms.iter().all(Zero::is_zero) {
            TermStream::finite(format!("component {a}"), Vec::new())
        } else {
            TermStream::prefix(format!("component {a}"), terms)
        };
        (a, stream)
    });
    collect_chi(streams, m)
}

fn collect_chi(streams: impl Iterator<Item = (GroupElement, TermStream)>, m: &SummationMethod) -> MethodChi {
    let mut ok = BTreeMap::new();
    let mut bad = BTreeMap::new();
    for (a, s) in streams {
        match m.sum(&s) {
            SumOutcome::Summed(v) => {
                ok.insert(a, v);
            }
            other => {
                bad.insert(a, other);
            }
        }
    }
    if bad.is_empty() {
        MethodChi::Exists(ok)
    } else {
        MethodChi::Fails(bad)
    }
}

/// [`chi_method`] on the complex of `spec`, expanded to the method's budget.
pub fn chi_method_complex(spec: &AlgebraSpec, v: Variant, m: &SummationMethod) -> MethodChi {
    let cf = complex_closed_form(spec).pushforward(&spec.variant_hom(v)).expect("hom from the spec group");
    let dim_m = spec.dim_m().pushforward(&spec.variant_hom(v)).expect("hom from the spec group");
    let series = cf.expand(m.budget().saturating_sub(1)).scale_by(&dim_m).expect("same group");
    let g = series.group().clone();
    let streams: Vec<_> = g
        .elements()
        .map(|a| {
            let comp = series.component(&a);
            let terms: Vec<Rational> =
                comp.into_iter().enumerate().map(|(n, c)| if n % 2 == 0 { c } else { -c }).collect();
            // The expansion reaches the budget, which is all any method reads.
            (a.clone(), TermStream::finite(format!("component {a}"), terms))
        })
        .collect();
    collect_chi(streams.into_iter(), m)
}

/// Degrees whose streams the method could not sum.
pub fn failing_degrees(chi: &MethodChi) -> BTreeSet<GroupElement> {
    match chi {
        MethodChi::Exists(_) => BTreeSet::new(),
        MethodChi::Fails(m) => m.keys().cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summed(o: SumOutcome) -> f64 {
        o.value().unwrap_or_else(|| panic!("{o:?}"))
    }

    #[test]
    fn cesaro_examples() {
        assert!((summed(cesaro(1).sum(&grandi())) - 0.5).abs() < 1e-6);
        assert!((summed(cesaro(1).sum(&geometric(1, 2))) - 2.0).abs() < 1e-6);
        assert_eq!(cesaro(1).sum(&alternating_naturals()), SumOutcome::NotSummable);
        assert!((summed(cesaro(2).sum(&alternating_naturals())) - 0.25).abs() < 1e-4);
    }

    #[test]
    fn euler_and_abel_examples() {
        for m in [euler_transform(), abel_numeric_method(None)] {
            assert!((summed(m.sum(&grandi())) - 0.5).abs() < 1e-6, "{m:?}");
            assert!((summed(m.sum(&alternating_naturals())) - 0.25).abs() < 1e-4, "{m:?}");
            assert!((summed(m.sum(&geometric(1, 2))) - 2.0).abs() < 1e-6, "{m:?}");
        }
    }

    #[test]
    fn growing_streams_are_not_summable() {
        let s = summab_terms(2, 2, 0).unwrap();
        assert_eq!(cesaro(2).sum(&s), SumOutcome::NotSummable);
        assert_eq!(abel_numeric_method(None).sum(&s), SumOutcome::NotSummable);
    }

    #[test]
    fn summab_examples() {
        let first = |s: TermStream| (0..5).map(|i| s.term(i).unwrap()).collect::<Vec<_>>();
        assert_eq!(first(summab_terms(1, 2, 0).unwrap()), vec![int(1); 5]);
        assert_eq!(first(summab_terms(2, 2, 0).unwrap()), [1, 3, 5, 7, 9].map(int));
        assert_eq!(first(summab_terms(1, 4, 3).unwrap()), vec![int(1); 5]);
        assert!(matches!(summab_terms(2, 3, 0), Err(Error::BadResidue { .. })));
        assert!(matches!(summab_terms(2, 4, 4), Err(Error::BadResidue { .. })));
    }

    #[test]
    fn harness_examples() {
        let corpus = vec![
            CorpusEntry { stream: grandi(), limit: None },
            CorpusEntry { stream: geometric(1, 2), limit: Some(2.0) },
        ];
        let rep = check_method_properties(&cesaro(1), &corpus);
        assert!(rep.regular.holds && rep.additive.holds && rep.left_translative.holds, "{rep:?}");

        let grandi_sq = vec![CorpusEntry { stream: grandi(), limit: None }, CorpusEntry { stream: grandi(), limit: None }];
        let rep = check_method_properties(&abel_numeric_method(None), &grandi_sq);
        assert!(rep.multiplicative.holds && rep.multiplicative.checked == 1, "{rep:?}");

        let rep = check_method_properties(&drop_first(cesaro(1)), &corpus);
        assert!(!rep.left_translative.holds);
        assert!(rep.left_translative.witness.is_some());
    }

    #[test]
    fn cauchy_product_of_grandi() {
        let p = TermStream::cauchy(&grandi(), &grandi(), 64);
        let v = p.values(64);
        for (n, x) in v.iter().enumerate() {
            let want = if n % 2 == 0 { n as f64 + 1.0 } else { -(n as f64) - 1.0 };
            assert!((x - want).abs() < 1e-9);
        }
    }

    #[test]
    fn chi_examples() {
        let spec = AlgebraSpec::superalgebra(0, 1);
        match chi_method_complex(&spec, Variant::Ordinary, &abel_numeric_method(None)) {
            MethodChi::Exists(v) => assert!((v.values().next().unwrap() - 0.5).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
        let zero = TruncatedSeries::zero(&crate::group::FinAbGroup::trivial(), 10);
        match chi_method(&zero, &cesaro(1)) {
            MethodChi::Exists(v) => assert_eq!(v.values().copied().collect::<Vec<_>>(), [0.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn method_parsing() {
        assert_eq!(SummationMethod::parse("cesaro:3").unwrap().name(), "cesaro:3");
        assert_eq!(SummationMethod::parse("abel").unwrap().name(), "abel");
        assert!(SummationMethod::parse("borel").is_err());
        assert!(SummationMethod::parse("cesaro:x").is_err());
    }
}
