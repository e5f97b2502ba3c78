//! Seeded fixtures shared by the benchmarks.

use gbf_core::experiment::{heat_signal, nested_random_sampling};
use gbf_core::gbf::diffusion_gbf;
use gbf_core::graph::connected_random_geometric;
use gbf_core::{Gbf, Graph, SamplingSet, Signal, Spectrum};

pub struct Fixture {
    pub graph: Graph,
    pub spectrum: Spectrum,
    pub gbf: Gbf,
    pub sampling: SamplingSet,
    pub signal: Signal,
}

/// Connected random geometric graph on `n` nodes with a diffusion GBF, a
/// heat signal and `n / 4` random samples.
pub fn fixture(n: usize) -> Fixture {
    let radius = (3.0 * (n as f64).ln() / (std::f64::consts::PI * n as f64)).sqrt();
    let (graph, _) = connected_random_geometric(n, radius, 7, 1000).expect("connected draw");
    let spectrum = Spectrum::of_graph(&graph).expect("connected graph");
    let gbf = diffusion_gbf(&spectrum, 2.0).expect("valid time");
    let sampling = nested_random_sampling(n, (n / 4).max(1), 3).expect("count within range");
    let signal = heat_signal(&spectrum, 5.0, 0).expect("valid source");
    Fixture {
        graph,
        spectrum,
        gbf,
        sampling,
        signal,
    }
}
