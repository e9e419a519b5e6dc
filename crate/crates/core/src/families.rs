//! Named graph families: canonical constructors and the closed-form α₁
//! values used for regression testing.

use crate::graph::{Graph, GraphError};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: {constraint}")]
    InvalidParameter {
        family: &'static str,
        constraint: String,
    },
    #[error("no closed-form α₁ for {spec}")]
    NoClosedForm { spec: String },
    #[error("cannot parse family spec '{input}': {message}")]
    Parse { input: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named family instance, e.g. `path:9`, `broom:6,3`, `bip:2,3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Complete {
        n: usize,
    },
    Empty {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Order n: hub `n-1` joined to a rim cycle on `0..n-1`.
    Wheel {
        n: usize,
    },
    /// Star K_{1,n-1}: hub 0.
    Star {
        n: usize,
    },
    CompleteBipartite {
        r: usize,
        s: usize,
    },
    /// Path `0..k` with `n-k` pendants attached at vertex `k-1`.
    Broom {
        n: usize,
        k: usize,
    },
    /// Star with hub 0 plus the extra edge (1,2), making one triangle.
    UnicyclicStar {
        n: usize,
    },
    /// Edge (0,1) plus `n-2` isolated vertices.
    OneEdgePlusIsolates {
        n: usize,
    },
}

impl FamilySpec {
    fn invalid(family: &'static str, constraint: &str) -> FamilyError {
        FamilyError::InvalidParameter {
            family,
            constraint: constraint.to_string(),
        }
    }

    /// Parameter validation shared by generation and the closed forms.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Complete { .. } | FamilySpec::Empty { .. } => Ok(()),
            FamilySpec::Path { n } if n >= 1 => Ok(()),
            FamilySpec::Path { .. } => Err(Self::invalid("path", "requires n >= 1")),
            FamilySpec::Cycle { n } if n >= 3 => Ok(()),
            FamilySpec::Cycle { .. } => Err(Self::invalid("cycle", "requires n >= 3")),
            FamilySpec::Wheel { n } if n >= 4 => Ok(()),
            FamilySpec::Wheel { .. } => Err(Self::invalid("wheel", "requires n >= 4")),
            FamilySpec::Star { n } if n >= 2 => Ok(()),
            FamilySpec::Star { .. } => Err(Self::invalid("star", "requires n >= 2")),
            FamilySpec::CompleteBipartite { r, s } if r >= 1 && s >= 1 => Ok(()),
            FamilySpec::CompleteBipartite { .. } => Err(Self::invalid("bip", "requires r, s >= 1")),
            FamilySpec::Broom { n, k } if k >= 2 && n >= k => Ok(()),
            FamilySpec::Broom { .. } => Err(Self::invalid("broom", "requires n >= k >= 2")),
            FamilySpec::UnicyclicStar { n } if n >= 3 => Ok(()),
            FamilySpec::UnicyclicStar { .. } => Err(Self::invalid("ustar", "requires n >= 3")),
            FamilySpec::OneEdgePlusIsolates { n } if n >= 2 => Ok(()),
            FamilySpec::OneEdgePlusIsolates { .. } => {
                Err(Self::invalid("oneedge", "requires n >= 2"))
            }
        }
    }
}

/// Builds the family member under its canonical labeling.
pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let g = match *spec {
        FamilySpec::Complete { n } => Graph::complete(n),
        FamilySpec::Empty { n } => Graph::edgeless(n),
        FamilySpec::Path { n } => {
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::Cycle { n } => {
            let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 1, 0));
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::Wheel { n } => {
            let rim = n - 1;
            let mut edges: Vec<_> = (0..rim - 1).map(|i| (i, i + 1)).collect();
            edges.push((rim - 1, 0));
            edges.extend((0..rim).map(|v| (v, rim)));
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::Star { n } => {
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::CompleteBipartite { r, s } => Graph::edgeless(r).join(&Graph::edgeless(s))?,
        FamilySpec::Broom { n, k } => {
            let mut edges: Vec<_> = (0..k - 1).map(|i| (i, i + 1)).collect();
            edges.extend((k..n).map(|v| (k - 1, v)));
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::UnicyclicStar { n } => {
            let mut edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            edges.push((1, 2));
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::OneEdgePlusIsolates { n } => Graph::from_edges(n, &[(0, 1)])?,
    };
    Ok(g)
}

/// Closed-form α₁ where one is known; families without one report an error.
#[allow(clippy::manual_div_ceil)] // floor((n+1)/2) is the formula's own shape
pub fn closed_form_alpha1(spec: &FamilySpec) -> Result<usize, FamilyError> {
    spec.validate()?;
    match *spec {
        FamilySpec::Complete { n } if n >= 2 => Ok(2),
        FamilySpec::Path { n } if n >= 2 => Ok((n + 2) / 2),
        FamilySpec::Cycle { n } => Ok((n + 1) / 2),
        FamilySpec::Wheel { n } => Ok(n / 2),
        FamilySpec::Star { n } if n >= 2 => Ok(2),
        FamilySpec::Empty { .. } => Ok(0),
        FamilySpec::Broom { n, k: 3 } if n >= 3 => Ok(n - 1),
        FamilySpec::UnicyclicStar { n } => Ok(n - 1),
        FamilySpec::OneEdgePlusIsolates { n } => Ok(n),
        other => Err(FamilyError::NoClosedForm {
            spec: other.to_string(),
        }),
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Empty { n } => write!(f, "empty:{n}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Wheel { n } => write!(f, "wheel:{n}"),
            FamilySpec::Star { n } => write!(f, "star:{n}"),
            FamilySpec::CompleteBipartite { r, s } => write!(f, "bip:{r},{s}"),
            FamilySpec::Broom { n, k } => write!(f, "broom:{n},{k}"),
            FamilySpec::UnicyclicStar { n } => write!(f, "ustar:{n}"),
            FamilySpec::OneEdgePlusIsolates { n } => write!(f, "oneedge:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(input: &str) -> Result<FamilySpec, FamilyError> {
        let err = |message: &str| FamilyError::Parse {
            input: input.to_string(),
            message: message.to_string(),
        };
        let (name, args) = match input.split_once(':') {
            Some((name, args)) => (name.trim(), args),
            None => return Err(err("expected 'family:params'")),
        };
        let nums: Vec<usize> = args
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("parameters must be non-negative integers"))?;
        let one = || -> Result<usize, FamilyError> {
            if nums.len() == 1 {
                Ok(nums[0])
            } else {
                Err(err("expected one parameter"))
            }
        };
        let two = || -> Result<(usize, usize), FamilyError> {
            if nums.len() == 2 {
                Ok((nums[0], nums[1]))
            } else {
                Err(err("expected two parameters"))
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "complete" | "k" => FamilySpec::Complete { n: one()? },
            "empty" | "edgeless" => FamilySpec::Empty { n: one()? },
            "path" | "p" => FamilySpec::Path { n: one()? },
            "cycle" | "c" => FamilySpec::Cycle { n: one()? },
            "wheel" | "w" => FamilySpec::Wheel { n: one()? },
            "star" => FamilySpec::Star { n: one()? },
            "bip" | "bipartite" => {
                let (r, s) = two()?;
                FamilySpec::CompleteBipartite { r, s }
            }
            "broom" => {
                let (n, k) = two()?;
                FamilySpec::Broom { n, k }
            }
            "ustar" | "unicyclic_star" => FamilySpec::UnicyclicStar { n: one()? },
            "oneedge" | "one_edge" => FamilySpec::OneEdgePlusIsolates { n: one()? },
            _ => return Err(err("unknown family name")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{alpha0_exact, alpha1_exact};

    #[test]
    fn generation_cases() {
        let b63 = generate(&FamilySpec::Broom { n: 6, k: 3 }).unwrap();
        assert_eq!(b63.size(), 5);
        assert_eq!(b63.degree_sequence(), vec![4, 2, 1, 1, 1, 1]);
        assert!(b63.is_connected());

        let u5 = generate(&FamilySpec::UnicyclicStar { n: 5 }).unwrap();
        assert_eq!(u5.size(), 5);
        assert!(u5.has_edge(1, 2));
        assert_eq!(u5.degree(0), 4);

        let w4 = generate(&FamilySpec::Wheel { n: 4 }).unwrap();
        assert_eq!(w4, Graph::complete(4));

        // B^3_4 is the path P4.
        let b34 = generate(&FamilySpec::Broom { n: 4, k: 3 }).unwrap();
        let p4 = generate(&FamilySpec::Path { n: 4 }).unwrap();
        assert_eq!(b34.degree_sequence(), p4.degree_sequence());

        // U_{1,2} is the triangle.
        let u3 = generate(&FamilySpec::UnicyclicStar { n: 3 }).unwrap();
        assert_eq!(u3, Graph::complete(3));
    }

    #[test]
    fn parameter_validation() {
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Wheel { n: 3 }).is_err());
        assert!(generate(&FamilySpec::Broom { n: 3, k: 4 }).is_err());
        assert!(generate(&FamilySpec::Broom { n: 4, k: 1 }).is_err());
        assert!(generate(&FamilySpec::UnicyclicStar { n: 2 }).is_err());
        assert!(generate(&FamilySpec::OneEdgePlusIsolates { n: 1 }).is_err());
        assert!(generate(&FamilySpec::CompleteBipartite { r: 0, s: 3 }).is_err());
        assert!(generate(&FamilySpec::Empty { n: 0 }).is_ok());
    }

    #[test]
    fn closed_form_cases() {
        assert_eq!(closed_form_alpha1(&FamilySpec::Path { n: 9 }).unwrap(), 5);
        assert_eq!(closed_form_alpha1(&FamilySpec::Wheel { n: 7 }).unwrap(), 3);
        assert_eq!(
            closed_form_alpha1(&FamilySpec::UnicyclicStar { n: 8 }).unwrap(),
            7
        );
        assert_eq!(closed_form_alpha1(&FamilySpec::Empty { n: 40 }).unwrap(), 0);
        assert_eq!(
            closed_form_alpha1(&FamilySpec::OneEdgePlusIsolates { n: 12 }).unwrap(),
            12
        );
        assert_eq!(
            closed_form_alpha1(&FamilySpec::Complete { n: 9 }).unwrap(),
            2
        );
        assert_eq!(closed_form_alpha1(&FamilySpec::Star { n: 30 }).unwrap(), 2);

        assert!(matches!(
            closed_form_alpha1(&FamilySpec::CompleteBipartite { r: 2, s: 3 }),
            Err(FamilyError::NoClosedForm { .. })
        ));
        assert!(matches!(
            closed_form_alpha1(&FamilySpec::Broom { n: 6, k: 4 }),
            Err(FamilyError::NoClosedForm { .. })
        ));
        assert!(matches!(
            closed_form_alpha1(&FamilySpec::Complete { n: 1 }),
            Err(FamilyError::NoClosedForm { .. })
        ));
        assert!(matches!(
            closed_form_alpha1(&FamilySpec::Path { n: 1 }),
            Err(FamilyError::NoClosedForm { .. })
        ));
    }

    #[test]
    fn closed_forms_match_solver_to_order_60() {
        for n in 2..=60usize {
            let mut specs = vec![
                FamilySpec::Complete { n },
                FamilySpec::Path { n },
                FamilySpec::Star { n },
                FamilySpec::OneEdgePlusIsolates { n },
                FamilySpec::Empty { n },
            ];
            if n >= 3 {
                specs.push(FamilySpec::Cycle { n });
                specs.push(FamilySpec::Broom { n, k: 3 });
                specs.push(FamilySpec::UnicyclicStar { n });
            }
            if n >= 4 {
                specs.push(FamilySpec::Wheel { n });
            }
            for spec in specs {
                let g = generate(&spec).unwrap();
                assert_eq!(
                    alpha1_exact(&g).value,
                    closed_form_alpha1(&spec).unwrap(),
                    "{spec}"
                );
            }
        }
    }

    #[test]
    #[allow(clippy::manual_div_ceil)]
    fn alpha0_of_paths_matches_formula() {
        for n in 1..=25usize {
            let g = generate(&FamilySpec::Path { n }).unwrap();
            assert_eq!(alpha0_exact(&g).value, (n + 1) / 2, "path:{n}");
        }
    }

    #[test]
    fn parsing_round_trips() {
        for text in [
            "path:9",
            "broom:6,3",
            "bip:2,3",
            "empty:5",
            "complete:4",
            "cycle:7",
            "wheel:6",
            "star:5",
            "ustar:8",
            "oneedge:9",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text, "round trip of {text}");
        }
        assert_eq!(
            "unicyclic_star:5".parse::<FamilySpec>().unwrap(),
            FamilySpec::UnicyclicStar { n: 5 }
        );
        assert!("path".parse::<FamilySpec>().is_err());
        assert!("path:x".parse::<FamilySpec>().is_err());
        assert!("path:2,3".parse::<FamilySpec>().is_err());
        assert!("blob:9".parse::<FamilySpec>().is_err());
        assert!("cycle:2".parse::<FamilySpec>().is_err());
    }
}
