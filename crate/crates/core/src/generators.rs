//! Seeded random-graph models.
//!
//! Every generator is a pure function of its parameters and seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{disjoint_union, Graph};
use crate::rng::{derive_seed, stream_rng};

/// Retry budget for exact regular graphs.
pub const DEFAULT_REGULAR_RETRIES: usize = 100;

/// Model and parameters, serialized as `{"model": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "snake_case")]
pub enum Model {
    ErdosRenyi {
        n: usize,
        c: f64,
    },
    Configuration {
        degrees: Vec<usize>,
    },
    RandomRegular {
        n: usize,
        d: usize,
    },
    /// Household model over an Erdős–Rényi base graph.
    HouseholdTriangle {
        n: usize,
        c: f64,
    },
    DisjointRegular {
        n: usize,
        d: usize,
    },
}

/// A model plus its seed; JSON form `{"model", "params", "seed"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        GeneratorSpec { model, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.model {
            Model::ErdosRenyi { n, c } | Model::HouseholdTriangle { n, c } => check_er(*n, *c),
            Model::Configuration { degrees } => check_degrees(degrees),
            Model::RandomRegular { n, d } => check_regular(*n, *d),
            Model::DisjointRegular { n, d } => check_regular(ceil_sqrt(*n), *d),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        let seed = self.seed;
        match &self.model {
            Model::ErdosRenyi { n, c } => erdos_renyi(*n, *c, seed),
            Model::Configuration { degrees } => configuration_model(degrees, seed),
            Model::RandomRegular { n, d } => random_regular(*n, *d, seed).map(|r| r.graph),
            Model::HouseholdTriangle { n, c } => {
                let base = erdos_renyi(*n, *c, derive_seed(seed, 0))?;
                Ok(household_triangle(&base, derive_seed(seed, 1)))
            }
            Model::DisjointRegular { n, d } => disjoint_regular(*n, *d, seed).map(|r| r.graph),
        }
    }

    /// Mean offspring of the Poisson branching limit, when the model has one.
    pub fn poisson_mean_degree(&self) -> Option<f64> {
        match self.model {
            Model::ErdosRenyi { c, .. } => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::ErdosRenyi { n, c } => write!(f, "er:n={n},c={c}"),
            Model::Configuration { degrees } => {
                let d: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "config:degrees={}", d.join(";"))
            }
            Model::RandomRegular { n, d } => write!(f, "regular:n={n},d={d}"),
            Model::HouseholdTriangle { n, c } => write!(f, "household:n={n},c={c}"),
            Model::DisjointRegular { n, d } => write!(f, "disjoint:n={n},d={d}"),
        }
    }
}

/// Short form used on the command line, e.g. `er:n=1000,c=4` or
/// `config:degrees=1;1;2;2`. A `seed=` key is accepted by
/// [`parse_generator_arg`], not here.
impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let kv = parse_kv(rest)?;
        let get = |key: &str| -> Result<&str> {
            kv.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| invalid(format!("model {name}: missing parameter {key}")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| invalid(format!("model {name}: {key} must be an integer")))
        };
        let real = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|_| invalid(format!("model {name}: {key} must be a number")))
        };
        let model = match name {
            "er" | "erdos_renyi" => Model::ErdosRenyi {
                n: num("n")?,
                c: real("c")?,
            },
            "config" | "configuration" => {
                let degrees = get("degrees")?
                    .split(';')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| invalid(format!("bad degree {t:?}"))))
                    .collect::<Result<_>>()?;
                Model::Configuration { degrees }
            }
            "regular" | "random_regular" => Model::RandomRegular {
                n: num("n")?,
                d: num("d")?,
            },
            "household" | "household_triangle" => Model::HouseholdTriangle {
                n: num("n")?,
                c: real("c")?,
            },
            "disjoint" | "disjoint_regular" => Model::DisjointRegular {
                n: num("n")?,
                d: num("d")?,
            },
            other => return Err(invalid(format!("unknown model {other:?}"))),
        };
        Ok(model)
    }
}

fn parse_kv(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| invalid(format!("expected key=value, found {t:?}")))
        })
        .collect()
}

/// Parses the short form with an optional `seed=` key; `default_seed` fills
/// in a missing seed.
pub fn parse_generator_arg(arg: &str, default_seed: u64) -> Result<GeneratorSpec> {
    let arg = arg.trim();
    let (name, rest) = arg.split_once(':').unwrap_or((arg, ""));
    let mut seed = default_seed;
    let mut kept = Vec::new();
    for (k, v) in parse_kv(rest)? {
        if k == "seed" {
            seed = v.parse().map_err(|_| invalid(format!("bad seed {v:?}")))?;
        } else {
            kept.push(format!("{k}={v}"));
        }
    }
    let model: Model = format!("{name}:{}", kept.join(",")).parse()?;
    Ok(GeneratorSpec::new(model, seed))
}

fn ceil_sqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k < n {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    k
}

fn check_er(n: usize, c: f64) -> Result<()> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(invalid(format!(
            "mean degree must be finite and >= 0, got {c}"
        )));
    }
    if c > 0.0 && c >= n as f64 {
        return Err(invalid(format!("mean degree {c} must be below n = {n}")));
    }
    Ok(())
}

fn check_degrees(degrees: &[usize]) -> Result<()> {
    let n = degrees.len();
    if let Some(&d) = degrees.iter().find(|&&d| d >= n.max(1)) {
        return Err(invalid(format!("degree {d} must be below n = {n}")));
    }
    if degrees.iter().sum::<usize>() % 2 != 0 {
        return Err(invalid("degree sum is odd"));
    }
    Ok(())
}

fn check_regular(n: usize, d: usize) -> Result<()> {
    if (n * d) % 2 != 0 {
        return Err(invalid(format!("n*d = {} is odd", n * d)));
    }
    if d >= n.max(1) {
        return Err(invalid(format!("degree {d} must be below n = {n}")));
    }
    Ok(())
}

/// G(n, c/(n-1)): each pair is an edge independently, expected degree `c`.
///
/// Uses geometric skipping over the lower-triangular pair sequence, O(n + m).
pub fn erdos_renyi(n: usize, c: f64, seed: u64) -> Result<Graph> {
    check_er(n, c)?;
    if c == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    let p = c / (n - 1) as f64;
    if p >= 1.0 {
        return Ok(crate::graph::named::complete(n));
    }
    let mut rng = stream_rng(seed, 0);
    let log_q = (-p).ln_1p();
    let mut pairs = Vec::new();
    // Pairs (v, w) with w < v, enumerated row by row.
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((-r).ln_1p() / log_q).floor();
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            pairs.push((w as usize, v));
        }
    }
    pairs.sort_unstable();
    Ok(Graph::from_simple_sorted(n, &pairs))
}

/// Erased configuration model: a uniform matching of degree stubs, after
/// which self-loops and parallel edges are dropped.
pub fn configuration_model(degrees: &[usize], seed: u64) -> Result<Graph> {
    check_degrees(degrees)?;
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    let mut rng = stream_rng(seed, 0);
    stubs.shuffle(&mut rng);
    let pairs = stubs.chunks_exact(2).map(|s| (s[0], s[1]));
    Graph::from_edges(degrees.len(), pairs)
}

#[derive(Debug, Clone)]
pub struct RegularOutcome {
    pub graph: Graph,
    /// False when every attempt failed and `graph` is only near-regular.
    pub exact: bool,
    pub attempts: usize,
}

pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<RegularOutcome> {
    random_regular_with_retries(n, d, seed, DEFAULT_REGULAR_RETRIES)
}

/// Random `d`-regular graph on `n` vertices.
///
/// Each attempt pairs stubs one at a time, redrawing pairs that would form a
/// loop or a repeated edge, and is abandoned when no admissible pair can be
/// found. After `retries` abandoned attempts the erased configuration model
/// is returned with `exact = false`.
pub fn random_regular_with_retries(
    n: usize,
    d: usize,
    seed: u64,
    retries: usize,
) -> Result<RegularOutcome> {
    check_regular(n, d)?;
    for attempt in 0..retries {
        let mut rng = stream_rng(seed, attempt as u64);
        if let Some(pairs) = try_pair_regular(n, d, &mut rng) {
            let graph = Graph::from_edges(n, pairs)?;
            debug_assert!((0..n).all(|v| graph.degree(v) == d));
            return Ok(RegularOutcome {
                graph,
                exact: true,
                attempts: attempt + 1,
            });
        }
    }
    let degrees = vec![d; n];
    let graph = configuration_model(&degrees, derive_seed(seed, retries as u64))?;
    let exact = (0..n).all(|v| graph.degree(v) == d);
    Ok(RegularOutcome {
        graph,
        exact,
        attempts: retries,
    })
}

fn try_pair_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adjacent = std::collections::HashSet::with_capacity(n * d / 2);
    let mut pairs = Vec::with_capacity(n * d / 2);
    while !stubs.is_empty() {
        let len = stubs.len();
        let mut found = None;
        // Draw pairs until an admissible one turns up; a bounded number of
        // failures ends the attempt.
        for _ in 0..(20 * len).max(64) {
            let i = rng.random_range(0..len);
            let j = rng.random_range(0..len);
            let (a, b) = (stubs[i], stubs[j]);
            if i != j && a != b && !adjacent.contains(&(a.min(b), a.max(b))) {
                found = Some((i, j));
                break;
            }
        }
        let (i, j) = found?;
        let (a, b) = (stubs[i], stubs[j]);
        adjacent.insert((a.min(b), a.max(b)));
        pairs.push((a, b));
        let (hi, lo) = (i.max(j), i.min(j));
        stubs.swap_remove(hi);
        stubs.swap_remove(lo);
    }
    Some(pairs)
}

/// Household model: vertex `v` of `base` becomes the triangle
/// `{3v, 3v+1, 3v+2}` and each base edge `(u, v)` is attached to one uniform
/// member of each triangle.
pub fn household_triangle(base: &Graph, seed: u64) -> Graph {
    let n = base.n();
    let mut edges = Vec::with_capacity(3 * n + base.m());
    for v in 0..n {
        let t = 3 * v;
        edges.extend([(t, t + 1), (t, t + 2), (t + 1, t + 2)]);
    }
    let mut rng = stream_rng(seed, 0);
    for (u, v) in base.edges() {
        let a = 3 * u + rng.random_range(0..3);
        let b = 3 * v + rng.random_range(0..3);
        edges.push((a, b));
    }
    Graph::from_edges(3 * n, edges).expect("household ids are in range")
}

#[derive(Debug, Clone)]
pub struct DisjointRegularOutcome {
    pub graph: Graph,
    pub copies: usize,
    pub copy_size: usize,
    pub all_exact: bool,
}

/// `ceil(sqrt(n))` independent random `d`-regular graphs of that size.
pub fn disjoint_regular(n: usize, d: usize, seed: u64) -> Result<DisjointRegularOutcome> {
    let k = ceil_sqrt(n);
    check_regular(k, d)?;
    let mut parts = Vec::with_capacity(k);
    let mut all_exact = true;
    for i in 0..k {
        let r = random_regular(k, d, derive_seed(seed, i as u64))?;
        all_exact &= r.exact;
        parts.push(r.graph);
    }
    Ok(DisjointRegularOutcome {
        graph: disjoint_union(&parts),
        copies: k,
        copy_size: k,
        all_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{connected_components, named};

    #[test]
    fn er_degenerate_probabilities() {
        assert_eq!(erdos_renyi(5, 0.0, 1).unwrap(), Graph::empty(5));
        assert_eq!(erdos_renyi(5, 4.0, 1).unwrap(), named::complete(5));
        assert!(erdos_renyi(5, 5.0, 1).is_err());
        assert!(erdos_renyi(5, -1.0, 1).is_err());
        assert!(erdos_renyi(5, f64::NAN, 1).is_err());
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(
            erdos_renyi(500, 3.0, 9).unwrap(),
            erdos_renyi(500, 3.0, 9).unwrap()
        );
        assert_ne!(
            erdos_renyi(500, 3.0, 9).unwrap(),
            erdos_renyi(500, 3.0, 10).unwrap()
        );
    }

    #[test]
    fn configuration_small_cases() {
        let g = configuration_model(&[1, 1], 5).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(configuration_model(&[0, 0, 0], 5).unwrap(), Graph::empty(3));
        assert!(configuration_model(&[1, 1, 1], 5).is_err());
        assert!(configuration_model(&[3, 1], 5).is_err());
    }

    #[test]
    fn regular_small_cases() {
        let r = random_regular(4, 3, 2).unwrap();
        assert!(r.exact);
        assert_eq!(r.graph, named::complete(4));
        let r = random_regular(6, 2, 2).unwrap();
        assert!((0..6).all(|v| r.graph.degree(v) == 2));
        assert!(random_regular(5, 3, 1).is_err());
        assert!(random_regular(3, 3, 1).is_err());
    }

    #[test]
    fn regular_thousand_five() {
        let r = random_regular(1000, 5, 42).unwrap();
        assert!(r.exact);
        assert!((0..1000).all(|v| r.graph.degree(v) == 5));
    }

    #[test]
    fn household_shapes() {
        let g = household_triangle(&Graph::empty(1), 0);
        assert_eq!((g.n(), g.m()), (3, 3));
        let g = household_triangle(&named::path(2), 0);
        assert_eq!((g.n(), g.m()), (6, 7));
    }

    #[test]
    fn disjoint_regular_shapes() {
        let r = disjoint_regular(16, 3, 1).unwrap();
        assert_eq!(r.graph, disjoint_union(&vec![named::complete(4); 4]));
        let r = disjoint_regular(10_000, 5, 1).unwrap();
        let c = connected_components(&r.graph);
        assert_eq!(c.count(), 100);
        assert!(c.sizes.iter().all(|&s| s == 100));
        // Non-square n rounds the copy count up.
        let r = disjoint_regular(17, 2, 1).unwrap();
        assert_eq!((r.copies, r.graph.n()), (5, 25));
    }

    #[test]
    fn short_form_round_trips() {
        for s in [
            "er:n=10,c=2.5",
            "config:degrees=1;2;1",
            "regular:n=6,d=2",
            "household:n=4,c=1",
            "disjoint:n=16,d=3",
        ] {
            let m: Model = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        let spec = parse_generator_arg("er:n=1000,c=0,seed=7", 1).unwrap();
        assert_eq!(spec.seed, 7);
        assert!(parse_generator_arg("blob:n=3", 1).is_err());
        assert!(parse_generator_arg("er:n=3", 1).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let spec = GeneratorSpec::new(Model::ErdosRenyi { n: 10, c: 2.0 }, 3);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"model":"erdos_renyi","params":{"n":10,"c":2.0},"seed":3}"#
        );
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
