//! Closed-form sample sizes: VC-dimension cap, ε-net and ε-sample sizes,
//! the Hoeffding/union-bound size they are compared against, and the size
//! of the first progressive sample.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sssp;

/// Universal constant of the ε-net / ε-sample theorem used unless overridden.
pub const DEFAULT_C_UNIV: f64 = 0.5;

/// Largest graph for which [`DiamMode::Exact`] is allowed.
pub const EXACT_DIAMETER_MAX_N: usize = 2000;

/// How the vertex-diameter bound is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiamMode {
    Exact,
    Trivial,
    Provided(usize),
}

impl std::str::FromStr for DiamMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(DiamMode::Exact),
            "trivial" => Ok(DiamMode::Trivial),
            other => other
                .parse()
                .map(DiamMode::Provided)
                .map_err(|_| format!("expected 'exact', 'trivial' or an integer, got '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub n: usize,
    pub diam_v: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub c_univ: f64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        check_unit_interval("epsilon", self.epsilon)?;
        check_unit_interval("delta", self.delta)?;
        if !(self.c_univ > 0.0 && self.c_univ.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "c_univ must be positive, got {}",
                self.c_univ
            )));
        }
        if self.n == 0 || self.diam_v == 0 || self.diam_v > self.n {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= diam_v <= n, got diam_v = {}, n = {}",
                self.diam_v, self.n
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "{name} must lie in (0, 1), got {x}"
        )))
    }
}

/// Upper bound on the number of vertices of any shortest path.
///
/// Exact mode takes the maximum hop level over every root. With zero-weight
/// edges the hop levels can undercount, so exact mode answers `n` there.
pub fn vertex_diameter_bound(g: &Graph, mode: DiamMode) -> Result<usize> {
    vertex_diameter_bound_with_limit(g, mode, EXACT_DIAMETER_MAX_N)
}

pub fn vertex_diameter_bound_with_limit(g: &Graph, mode: DiamMode, limit: usize) -> Result<usize> {
    let n = g.n();
    match mode {
        DiamMode::Trivial => Ok(n),
        DiamMode::Provided(value) if (1..=n).contains(&value) => Ok(value),
        DiamMode::Provided(value) => Err(Error::InvalidConfig(format!(
            "provided vertex diameter {value} outside 1..={n}"
        ))),
        DiamMode::Exact if n > limit => Err(Error::DiameterLimit { n, limit }),
        DiamMode::Exact if g.has_zero_weight_edge() => Ok(n),
        DiamMode::Exact => {
            let hops = (0..n)
                .into_par_iter()
                .map(|root| {
                    let tree = sssp::dijkstra_canonical(g, root)?;
                    Ok(sssp::max_hops_from_tree(g, &tree)
                        .into_iter()
                        .max()
                        .unwrap_or(0))
                })
                .collect::<Result<Vec<u32>>>()?;
            Ok(1 + hops.into_iter().max().unwrap_or(0) as usize)
        }
    }
}

/// `⌊lg diam_v + lg n + 2⌋`, evaluated in integers.
pub fn vc_dimension_bound(n: usize, diam_v: usize) -> usize {
    assert!(
        n >= 1 && diam_v >= 1,
        "vc_dimension_bound needs n, diam_v >= 1"
    );
    let product = n as u128 * diam_v as u128;
    (127 - product.leading_zeros()) as usize + 2
}

/// Sample size making the sample an ε-net: `⌈(c/ε)(k ln(1/ε) + ln(1/δ))⌉`.
pub fn epsilon_net_size(b: &BoundInputs, k: usize) -> usize {
    let e = b.epsilon;
    ((b.c_univ / e) * (k as f64 * (1.0 / e).ln() + (1.0 / b.delta).ln())).ceil() as usize
}

/// Sample size making the sample ε-representative: `⌈(c/ε²)(k + ln(1/δ))⌉`.
pub fn epsilon_sample_size(b: &BoundInputs, k: usize) -> usize {
    let e = b.epsilon;
    ((b.c_univ / (e * e)) * (k as f64 + (1.0 / b.delta).ln())).ceil() as usize
}

/// Hoeffding plus a union bound over all pairs:
/// `⌈(ln 2 + 2 ln n + ln(1/δ)) / (2ε²)⌉`.
pub fn hoeffding_union_size(n: usize, epsilon: f64, delta: f64) -> usize {
    let n = n as f64;
    ((2f64.ln() + 2.0 * n.ln() + (1.0 / delta).ln()) / (2.0 * epsilon * epsilon)).ceil() as usize
}

/// First progressive sample size: the positive root of
/// `2 s² ε² − s ln(6/δ) − 8 ln²(6/δ) = 0`, rounded up.
pub fn initial_sample_size(epsilon: f64, delta: f64) -> usize {
    let l = (6.0 / delta).ln();
    let e2 = epsilon * epsilon;
    (l * (1.0 + (1.0 + 64.0 * e2).sqrt()) / (4.0 * e2)).ceil() as usize
}

/// Every bound for one input, as reported by `pasp bounds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub c_univ: f64,
    pub diam_v: usize,
    pub vc_k: usize,
    pub eps_net_size: usize,
    pub eps_sample_size: usize,
    pub hoeffding_size: usize,
    pub initial_size: usize,
}

impl BoundsSummary {
    pub fn compute(b: &BoundInputs) -> Result<Self> {
        b.validate()?;
        let k = vc_dimension_bound(b.n, b.diam_v);
        Ok(BoundsSummary {
            n: b.n,
            epsilon: b.epsilon,
            delta: b.delta,
            c_univ: b.c_univ,
            diam_v: b.diam_v,
            vc_k: k,
            eps_net_size: epsilon_net_size(b, k),
            eps_sample_size: epsilon_sample_size(b, k),
            hoeffding_size: hoeffding_union_size(b.n.max(2), b.epsilon, b.delta),
            initial_size: initial_sample_size(b.epsilon, b.delta),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(epsilon: f64, delta: f64) -> BoundInputs {
        BoundInputs {
            n: 1000,
            diam_v: 10,
            epsilon,
            delta,
            c_univ: 0.5,
        }
    }

    fn unit(n: usize, edges: &[(usize, usize)]) -> Graph {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn vc_dimension() {
        assert_eq!(vc_dimension_bound(1000, 10), 15);
        assert_eq!(vc_dimension_bound(1, 1), 2);
        for n in [2usize, 3, 17, 1000, 4096, 10_000] {
            let expected = (2.0 * (n as f64).log2() + 2.0 + 1e-12).floor() as usize;
            assert_eq!(vc_dimension_bound(n, n), expected, "n = {n}");
        }
    }

    #[test]
    fn net_and_sample_sizes() {
        let b = inputs(0.1, 0.1);
        assert_eq!(epsilon_net_size(&b, 15), 185);
        assert_eq!(epsilon_sample_size(&b, 15), 866);
        assert!(epsilon_net_size(&b, 30) <= 2 * epsilon_net_size(&b, 15));

        let near_one = BoundInputs {
            epsilon: 1.0 - 1e-12,
            ..b
        };
        let limit = (0.5 * 10f64.ln()).ceil() as usize;
        assert_eq!(epsilon_net_size(&near_one, 15), limit);

        let half = BoundInputs { epsilon: 0.05, ..b };
        let ratio = epsilon_sample_size(&half, 15) as f64 / epsilon_sample_size(&b, 15) as f64;
        assert!((ratio - 4.0).abs() < 0.01);

        let loose = BoundInputs {
            delta: 1.0 - 1e-12,
            ..b
        };
        // ceil of 50 * (1 + ln(1/δ)) with ln(1/δ) ~ 1e-12
        assert!((50..=51).contains(&epsilon_sample_size(&loose, 1)));
    }

    #[test]
    fn hoeffding() {
        assert_eq!(hoeffding_union_size(1000, 0.1, 0.1), 841);
        assert_eq!(hoeffding_union_size(2, 0.5, 0.5), 6);
        assert!(hoeffding_union_size(2000, 0.1, 0.1) > hoeffding_union_size(1000, 0.1, 0.1));
    }

    #[test]
    fn initial_size_is_minimal_root() {
        assert_eq!(initial_sample_size(0.05, 0.1), 851);
        assert_eq!(initial_sample_size(0.5, 0.5), 13);
        assert_eq!(initial_sample_size(0.1, 0.1), 234);
        let quad = |s: f64, e: f64, d: f64| {
            let l = (6.0 / d).ln();
            2.0 * s * s * e * e - s * l - 8.0 * l * l
        };
        for &(e, d) in &[
            (0.05, 0.1),
            (0.5, 0.5),
            (0.1, 0.01),
            (0.3, 0.2),
            (0.01, 0.05),
        ] {
            let s = initial_sample_size(e, d) as f64;
            assert!(quad(s, e, d) >= 0.0);
            assert!(quad(s - 1.0, e, d) < 0.0);
        }
    }

    #[test]
    fn diameter_modes() {
        let path = unit(3, &[(0, 1), (1, 2)]);
        assert_eq!(vertex_diameter_bound(&path, DiamMode::Exact).unwrap(), 3);
        assert_eq!(vertex_diameter_bound(&path, DiamMode::Trivial).unwrap(), 3);
        assert_eq!(
            vertex_diameter_bound(&path, DiamMode::Provided(2)).unwrap(),
            2
        );
        assert!(vertex_diameter_bound(&path, DiamMode::Provided(4)).is_err());
        assert!(vertex_diameter_bound(&path, DiamMode::Provided(0)).is_err());

        let triangle = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            vertex_diameter_bound(&triangle, DiamMode::Exact).unwrap(),
            2
        );

        let star = unit(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(vertex_diameter_bound(&star, DiamMode::Exact).unwrap(), 3);

        assert!(matches!(
            vertex_diameter_bound_with_limit(&star, DiamMode::Exact, 4),
            Err(Error::DiameterLimit { n: 5, limit: 4 })
        ));

        let zero = Graph::from_edges(3, &[(0, 1, 0.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(vertex_diameter_bound(&zero, DiamMode::Exact).unwrap(), 3);
    }

    #[test]
    fn parse_diam_mode() {
        assert_eq!("exact".parse::<DiamMode>().unwrap(), DiamMode::Exact);
        assert_eq!("7".parse::<DiamMode>().unwrap(), DiamMode::Provided(7));
        assert!("seven".parse::<DiamMode>().is_err());
    }

    #[test]
    fn summary_matches_components() {
        let s = BoundsSummary::compute(&inputs(0.1, 0.1)).unwrap();
        assert_eq!(
            (
                s.vc_k,
                s.eps_net_size,
                s.eps_sample_size,
                s.hoeffding_size,
                s.initial_size
            ),
            (15, 185, 866, 841, 234)
        );
        assert!(BoundsSummary::compute(&inputs(1.5, 0.1)).is_err());
    }
}
