//! Experiment configuration: JSON file fields merged with command-line flags,
//! plus the small spec languages for graphs, sampling sets, signals, N grids
//! and frequency sets.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gbf_core::experiment::{heat_signal, nested_random_sampling, random_order, reference_graph};
use gbf_core::io::{read_graph_file, read_signal_file};
use gbf_core::{generate_graph, FrequencySet, GbfSpec, Graph, GraphKind, SamplingSet, Signal, Spectrum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Edge-list file.
    #[serde(default)]
    pub graph: Option<PathBuf>,
    /// Generator spec, see [`parse_generator`].
    #[serde(default)]
    pub gen: Option<String>,
    #[serde(default)]
    pub gbf: Vec<String>,
    #[serde(default)]
    pub samples: Option<String>,
    #[serde(default)]
    pub signal: Option<String>,
    #[serde(default)]
    pub bandwidth: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Shift added off the support of a semi-definite GBF.
    #[serde(default)]
    pub augment: Option<f64>,
    /// Sample counts for error-versus-N tables, see [`parse_grid`].
    #[serde(default)]
    pub grid: Option<String>,
    /// 1-based frequencies for the frame command, or `all`.
    #[serde(default)]
    pub freqs: Option<String>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::config("Io", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config("Config", format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` replace those loaded from a file. A non-empty
    /// GBF list replaces the whole list.
    pub fn merge(mut self, flags: ExperimentConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        take!(graph, gen, samples, signal, bandwidth, seed, out, augment, grid, freqs);
        if !flags.gbf.is_empty() {
            self.gbf = flags.gbf;
        }
        self
    }

    pub fn load_graph(&self) -> Result<Graph, CliError> {
        match (&self.graph, &self.gen) {
            (Some(_), Some(_)) => Err(CliError::config("Config", "give either --graph or --gen, not both")),
            (Some(path), None) => {
                if !path.exists() {
                    return Err(CliError::config(
                        "Io",
                        format!("graph file {} does not exist", path.display()),
                    ));
                }
                Ok(read_graph_file(path)?)
            }
            (None, Some(spec)) => build_generator(spec),
            (None, None) => Err(CliError::config("Config", "a graph is required (--graph or --gen)")),
        }
    }

    pub fn gbf_specs(&self) -> Result<Vec<GbfSpec>, CliError> {
        if self.gbf.is_empty() {
            return Err(CliError::config("Config", "a GBF descriptor is required (--gbf)"));
        }
        self.gbf.iter().map(|d| Ok(d.parse::<GbfSpec>()?)).collect()
    }

    pub fn single_gbf(&self) -> Result<GbfSpec, CliError> {
        let mut specs = self.gbf_specs()?;
        if specs.len() > 1 {
            return Err(CliError::config("Config", "this command takes exactly one --gbf"));
        }
        Ok(specs.remove(0))
    }

    pub fn sampling(&self, n: usize) -> Result<SamplingSpec, CliError> {
        let spec = self
            .samples
            .as_deref()
            .ok_or_else(|| CliError::config("Config", "--samples is required"))?;
        parse_samples(spec, self.seed, n)
    }

    pub fn load_signal(&self, spectrum: &Spectrum) -> Result<Option<Signal>, CliError> {
        self.signal
            .as_deref()
            .map(|s| parse_signal_spec(s, spectrum))
            .transpose()
    }

    pub fn require_signal(&self, spectrum: &Spectrum) -> Result<Signal, CliError> {
        self.load_signal(spectrum)?
            .ok_or_else(|| CliError::config("Config", "--signal is required"))
    }
}

/// Splits `name:k=v,k=v` into the name and its parameters.
fn split_spec(spec: &str) -> Result<(&str, BTreeMap<&str, &str>), CliError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut params = BTreeMap::new();
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::config("Spec", format!("'{spec}': expected key=value, found '{part}'")))?;
        if params.insert(k.trim(), v.trim()).is_some() {
            return Err(CliError::config("Spec", format!("'{spec}': key '{k}' given twice")));
        }
    }
    Ok((name.trim(), params))
}

struct Params<'a> {
    spec: &'a str,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a str, map: BTreeMap<&'a str, &'a str>, allowed: &[&str]) -> Result<Self, CliError> {
        if let Some(k) = map.keys().find(|k| !allowed.contains(k)) {
            return Err(CliError::config(
                "Spec",
                format!("'{spec}': unknown key '{k}', expected {}", allowed.join(", ")),
            ));
        }
        Ok(Params { spec, map })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::config("Spec", format!("'{}': bad value '{v}' for '{key}'", self.spec)))
            })
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.get(key)?
            .ok_or_else(|| CliError::config("Spec", format!("'{}': missing '{key}'", self.spec)))
    }
}

/// Graph generators: `path:n=<int>`, `cycle:n=<int>`, `complete:n=<int>`,
/// `grid:rows=<int>,cols=<int>`, `rgg:n=<int>,radius=<f>,seed=<int>` and
/// `reference` for the seeded 300-node random geometric graph.
pub fn parse_generator(spec: &str) -> Result<Option<GraphKind>, CliError> {
    let (name, map) = split_spec(spec)?;
    let kind = match name {
        "path" | "cycle" | "complete" => {
            let p = Params::new(spec, map, &["n"])?;
            let n = p.require("n")?;
            match name {
                "path" => GraphKind::Path { n },
                "cycle" => GraphKind::Cycle { n },
                _ => GraphKind::Complete { n },
            }
        }
        "grid" => {
            let p = Params::new(spec, map, &["rows", "cols"])?;
            GraphKind::Grid {
                rows: p.require("rows")?,
                cols: p.require("cols")?,
            }
        }
        "rgg" => {
            let p = Params::new(spec, map, &["n", "radius", "seed"])?;
            GraphKind::RandomGeometric {
                n: p.require("n")?,
                radius: p.require("radius")?,
                seed: p.require("seed")?,
            }
        }
        "reference" => {
            Params::new(spec, map, &[])?;
            return Ok(None);
        }
        other => {
            return Err(CliError::config(
                "Spec",
                format!("unknown generator '{other}', expected path, cycle, complete, grid, rgg or reference"),
            ))
        }
    };
    Ok(Some(kind))
}

fn build_generator(spec: &str) -> Result<Graph, CliError> {
    match parse_generator(spec)? {
        None => Ok(reference_graph()?.0),
        Some(kind) => {
            let generated = generate_graph(&kind)?;
            if !generated.is_usable() {
                return Err(CliError::config(
                    "IsolatedNode",
                    format!("'{spec}' left nodes {:?} isolated", generated.isolated),
                )
                .with_hint("choose another seed or a larger radius"));
            }
            Ok(generated.graph)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SamplingSpec {
    Fixed(SamplingSet),
    /// Prefixes of a seeded random order; `set` is the prefix of length `N`.
    Random {
        set: SamplingSet,
        order: Vec<usize>,
        seed: u64,
    },
}

impl SamplingSpec {
    pub fn set(&self) -> &SamplingSet {
        match self {
            SamplingSpec::Fixed(s) | SamplingSpec::Random { set: s, .. } => s,
        }
    }
}

/// `all`, a comma-separated list of 0-based nodes, or `random:N=<int>,seed=<int>`.
/// The seed of a random spec falls back to `--seed`.
pub fn parse_samples(spec: &str, seed: Option<u64>, n: usize) -> Result<SamplingSpec, CliError> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(SamplingSpec::Fixed(SamplingSet::all(n)?));
    }
    if spec.starts_with("random") {
        let (_, map) = split_spec(spec)?;
        let p = Params::new(spec, map, &["N", "seed"])?;
        let count: usize = p.require("N")?;
        let seed = p.get("seed")?.or(seed).ok_or_else(|| {
            CliError::config(
                "Spec",
                format!("'{spec}': random sampling needs a seed (seed=<int> or --seed)"),
            )
        })?;
        let set = nested_random_sampling(n, count, seed)?;
        return Ok(SamplingSpec::Random {
            set,
            order: random_order(n, seed),
            seed,
        });
    }
    let idx = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::config("Spec", format!("bad node index '{t}' in sampling list")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SamplingSpec::Fixed(SamplingSet::new(idx, n)?))
}

/// `eig:k=<int>` (1-based eigenvector), `heat:t=<f>,src=<int>`, or a file
/// with one value per line.
pub fn parse_signal_spec(spec: &str, spectrum: &Spectrum) -> Result<Signal, CliError> {
    let n = spectrum.len();
    let (name, map) = split_spec(spec)?;
    match name {
        "eig" => {
            let p = Params::new(spec, map, &["k"])?;
            let k: usize = p.require("k")?;
            if k == 0 || k > n {
                return Err(CliError::config("Spec", format!("'{spec}': k must lie in 1..={n}")));
            }
            Ok(spectrum.eigenvector(k - 1))
        }
        "heat" => {
            let p = Params::new(spec, map, &["t", "src"])?;
            Ok(heat_signal(spectrum, p.require("t")?, p.require("src")?)?)
        }
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(CliError::config(
                    "Spec",
                    format!("signal '{spec}' is neither eig:, heat: nor an existing file"),
                ));
            }
            let x = read_signal_file(path)?;
            if x.len() != n {
                return Err(CliError::config(
                    "DimensionMismatch",
                    format!("signal file has {} values, graph has {n} nodes", x.len()),
                ));
            }
            Ok(x)
        }
    }
}

/// `a,b,c` or `start:stop:step` (inclusive). Defaults to multiples of 10 up
/// to `max`.
pub fn parse_grid(spec: Option<&str>, max: usize) -> Result<Vec<usize>, CliError> {
    let bad = |m: String| CliError::config("Spec", m);
    let grid: Vec<usize> = match spec {
        None => (1..=max / 10).map(|k| 10 * k).collect(),
        Some(s) if s.contains(':') => {
            let parts = s
                .split(':')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("bad grid '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            match parts[..] {
                [start, stop, step] if step > 0 && start <= stop => (start..=stop).step_by(step).collect(),
                _ => return Err(bad(format!("grid '{s}' must be start:stop:step with step > 0"))),
            }
        }
        Some(s) => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad grid entry '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    if grid.is_empty() {
        return Err(bad(format!("empty sample-count grid for {max} nodes")));
    }
    if let Some(&g) = grid.iter().find(|&&g| g == 0 || g > max) {
        return Err(bad(format!("grid value {g} outside 1..={max}")));
    }
    Ok(grid)
}

/// `all` or 1-based frequencies; frequency 1 must be present.
pub fn parse_freqs(spec: Option<&str>, n: usize) -> Result<FrequencySet, CliError> {
    match spec.map(str::trim) {
        None | Some("all") => Ok(FrequencySet::all(n)),
        Some(s) => {
            let idx = s
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(CliError::config(
                        "Spec",
                        format!("bad frequency '{t}', expected 1..={n}"),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FrequencySet::new(idx, n)?)
        }
    }
}
