//! Python bindings for the NTU-game toolkit.
//!
//! Exposes the main types and operations: games (construction, subgames,
//! reduced games, perturbations), exact box regions (core, Pareto, IR,
//! feasible), predicates, Hausdorff distance, axiom checks and the random
//! generator. Payoff coordinates cross the boundary as exact rational
//! strings (`"p/q"` or `"p"`) or Python ints; reports come back as JSON
//! strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use ntukit::axioms::{AxiomId, Solution};
use ntukit::game::{Coalition, NTUGame, PayoffVector, PlayerId};
use ntukit::harness::report::{axiom_report_json, theorem_json};
use ntukit::harness::search::check_axiom_on_game;
use ntukit::harness::theorems::{check_theorem1, check_theorem2, check_theorem3};
use ntukit::harness::{game_from_str, game_to_string, impoverish, random_game, GenConfig};
use ntukit::predicates;
use ntukit::rational::{format_rational, parse_rational, rat_int, Rational};
use ntukit::reductions::{
    epsilon_game, epsilon_x_game, ss_reduced, ss_reduced_any_point, ws_reduced,
    ws_reduced_any_point, x_epsilon, Epsilon,
};
use ntukit::region::{
    core_region, feasible_region, hausdorff_linf, ir_region, pareto_region, Region,
};

/// A rational argument from Python: an int or a "p/q" string.
#[derive(FromPyObject)]
enum Rat {
    Int(i64),
    Str(String),
}

impl Rat {
    fn to_rational(&self) -> PyResult<Rational> {
        match self {
            Rat::Int(n) => Ok(rat_int(*n)),
            Rat::Str(s) => parse_rational(s).map_err(to_value_error),
        }
    }
}

fn to_value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn coalition_from_members(members: Vec<u32>) -> PyResult<Coalition> {
    Coalition::from_members(members.into_iter().map(PlayerId)).map_err(to_value_error)
}

fn members_list(c: Coalition) -> Vec<u32> {
    c.members().map(|p| p.index()).collect()
}

fn values_list(x: &PayoffVector) -> Vec<String> {
    x.values().iter().map(format_rational).collect()
}

/// A finitely-generated NTU game.
#[pyclass(name = "Game", frozen)]
struct PyGame {
    inner: NTUGame,
}

impl PyGame {
    fn point(&self, values: Vec<Rat>) -> PyResult<PayoffVector> {
        self.vector_over(self.inner.players(), values)
    }

    fn vector_over(&self, c: Coalition, values: Vec<Rat>) -> PyResult<PayoffVector> {
        let vals: Vec<Rational> = values
            .iter()
            .map(Rat::to_rational)
            .collect::<PyResult<_>>()?;
        PayoffVector::new(c, vals).map_err(to_value_error)
    }

    fn epsilon(&self, eps: Rat) -> PyResult<Epsilon> {
        Epsilon::new(eps.to_rational()?).map_err(to_value_error)
    }
}

#[pymethods]
impl PyGame {
    /// Parse a game from its JSON text form.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        Ok(PyGame {
            inner: game_from_str(json).map_err(to_value_error)?,
        })
    }

    /// A seeded random game on players 0..players.
    #[staticmethod]
    #[pyo3(signature = (seed, players, max_generators=3, denominator_bound=4))]
    fn random(seed: u64, players: u32, max_generators: u32, denominator_bound: u32) -> PyResult<Self> {
        let mut cfg = GenConfig::new(seed, players);
        cfg.max_generators = max_generators;
        cfg.denominator_bound = denominator_bound;
        Ok(PyGame {
            inner: random_game(&cfg).map_err(to_value_error)?,
        })
    }

    fn to_json(&self) -> String {
        game_to_string(&self.inner)
    }

    fn players(&self) -> Vec<u32> {
        members_list(self.inner.players())
    }

    fn num_players(&self) -> usize {
        self.inner.num_players()
    }

    /// The singleton maxima, one per player in ascending label order.
    fn b_vector(&self) -> Vec<String> {
        values_list(&self.inner.b_vector())
    }

    /// The normalized generator set of a coalition.
    fn generators(&self, members: Vec<u32>) -> PyResult<Vec<Vec<String>>> {
        let c = coalition_from_members(members)?;
        let set = self.inner.generator_set(c).map_err(to_value_error)?;
        Ok(set.generators().iter().map(values_list).collect())
    }

    fn subgame(&self, members: Vec<u32>) -> PyResult<PyGame> {
        let c = coalition_from_members(members)?;
        Ok(PyGame {
            inner: self.inner.subgame(c).map_err(to_value_error)?,
        })
    }

    /// Hull membership of a point for one coalition.
    fn contains(&self, members: Vec<u32>, point: Vec<Rat>) -> PyResult<bool> {
        let c = coalition_from_members(members)?;
        let x = self.vector_over(c, point)?;
        predicates::contains(&self.inner, c, &x).map_err(to_value_error)
    }

    fn interior_contains(&self, members: Vec<u32>, point: Vec<Rat>) -> PyResult<bool> {
        let c = coalition_from_members(members)?;
        let x = self.vector_over(c, point)?;
        predicates::interior_contains(&self.inner, c, &x).map_err(to_value_error)
    }

    fn in_core(&self, point: Vec<Rat>) -> PyResult<bool> {
        Ok(predicates::in_core(&self.inner, &self.point(point)?))
    }

    fn is_pareto(&self, point: Vec<Rat>) -> PyResult<bool> {
        Ok(predicates::is_pareto(&self.inner, &self.point(point)?))
    }

    fn is_individually_rational(&self, point: Vec<Rat>) -> PyResult<bool> {
        Ok(predicates::is_individually_rational(
            &self.inner,
            &self.point(point)?,
        ))
    }

    /// First domination witness against the point, scanning coalitions in
    /// ascending bit order: `(members, generator)` or `None`.
    fn find_domination(&self, point: Vec<Rat>) -> PyResult<Option<(Vec<u32>, Vec<String>)>> {
        let x = self.point(point)?;
        Ok(predicates::find_domination(&self.inner, &x)
            .map(|w| (members_list(w.coalition), values_list(&w.generator))))
    }

    /// A non-levelness witness `(members, x, y)`, if any exists.
    fn find_c2_violation(&self) -> Option<(Vec<u32>, Vec<String>, Vec<String>)> {
        predicates::find_c2_violation(&self.inner)
            .map(|v| (members_list(v.coalition), values_list(&v.x), values_list(&v.y)))
    }

    fn feasible_region(&self) -> PyRegion {
        PyRegion {
            inner: feasible_region(&self.inner),
        }
    }

    fn core_region(&self) -> PyRegion {
        PyRegion {
            inner: core_region(&self.inner),
        }
    }

    fn pareto_region(&self) -> PyRegion {
        PyRegion {
            inner: pareto_region(&self.inner),
        }
    }

    fn ir_region(&self) -> PyRegion {
        PyRegion {
            inner: ir_region(&self.inner),
        }
    }

    /// Strong-secession reduced game on the coalition with respect to an
    /// efficient agreement.
    #[pyo3(signature = (members, point, allow_non_pareto=false))]
    fn ss_reduced(
        &self,
        members: Vec<u32>,
        point: Vec<Rat>,
        allow_non_pareto: bool,
    ) -> PyResult<PyGame> {
        let c = coalition_from_members(members)?;
        let x = self.point(point)?;
        let inner = if allow_non_pareto {
            ss_reduced_any_point(&self.inner, c, &x)
        } else {
            ss_reduced(&self.inner, c, &x)
        }
        .map_err(to_value_error)?;
        Ok(PyGame { inner })
    }

    /// Weak-secession reduced game on the coalition.
    #[pyo3(signature = (members, point, allow_non_pareto=false))]
    fn ws_reduced(
        &self,
        members: Vec<u32>,
        point: Vec<Rat>,
        allow_non_pareto: bool,
    ) -> PyResult<PyGame> {
        let c = coalition_from_members(members)?;
        let x = self.point(point)?;
        let inner = if allow_non_pareto {
            ws_reduced_any_point(&self.inner, c, &x)
        } else {
            ws_reduced(&self.inner, c, &x)
        }
        .map_err(to_value_error)?;
        Ok(PyGame { inner })
    }

    /// The game whose grand set gains the orthant below `x + eps/|N|`.
    fn epsilon_game(&self, point: Vec<Rat>, eps: Rat) -> PyResult<PyGame> {
        let x = self.point(point)?;
        let eps = self.epsilon(eps)?;
        Ok(PyGame {
            inner: epsilon_game(&self.inner, &x, &eps).map_err(to_value_error)?,
        })
    }

    /// The epsilon game with singletons pinned to the raised coordinates.
    fn epsilon_x_game(&self, point: Vec<Rat>, eps: Rat) -> PyResult<PyGame> {
        let x = self.point(point)?;
        let eps = self.epsilon(eps)?;
        Ok(PyGame {
            inner: epsilon_x_game(&self.inner, &x, &eps).map_err(to_value_error)?,
        })
    }

    /// `x + eps/|N|` in every coordinate.
    fn x_epsilon(&self, point: Vec<Rat>, eps: Rat) -> PyResult<Vec<String>> {
        let x = self.point(point)?;
        let eps = self.epsilon(eps)?;
        Ok(values_list(&x_epsilon(&x, &eps)))
    }

    /// Exact L-infinity Hausdorff distance between the grand hulls.
    fn hausdorff(&self, other: &PyGame) -> PyResult<String> {
        let d = hausdorff_linf(&self.inner, &other.inner).map_err(to_value_error)?;
        Ok(format_rational(&d))
    }

    /// An antimonotonicity partner with the same grand set and weakly
    /// shrunk proper coalitions.
    fn impoverish(&self, seed: u64) -> PyGame {
        PyGame {
            inner: impoverish(&self.inner, seed),
        }
    }

    /// Run one axiom checker for a built-in solution; returns the report
    /// as a JSON string.
    #[pyo3(signature = (solution, axiom, seed=0))]
    fn check_axiom(&self, solution: &str, axiom: &str, seed: u64) -> PyResult<String> {
        let sol = Solution::builtin(solution).map_err(to_value_error)?;
        let axiom: AxiomId = axiom.parse().map_err(to_value_error)?;
        let (report, _) =
            check_axiom_on_game(&sol, axiom, &self.inner, seed).map_err(to_value_error)?;
        Ok(axiom_report_json(&report).to_string())
    }

    /// Desk-check one characterization theorem on this game; theorems 2
    /// and 3 need a core point and an epsilon. Returns a JSON string.
    #[pyo3(signature = (which, point=None, eps=None))]
    fn check_theorem(
        &self,
        which: u8,
        point: Option<Vec<Rat>>,
        eps: Option<Rat>,
    ) -> PyResult<String> {
        let result = match which {
            1 => check_theorem1(&self.inner),
            2 | 3 => {
                let x = self.point(point.ok_or_else(|| {
                    PyValueError::new_err("theorems 2 and 3 need a core point")
                })?)?;
                let eps = self.epsilon(
                    eps.ok_or_else(|| PyValueError::new_err("theorems 2 and 3 need an epsilon"))?,
                )?;
                if which == 2 {
                    check_theorem2(&self.inner, &x, &eps).map_err(to_value_error)?
                } else {
                    check_theorem3(&self.inner, &x, &eps).map_err(to_value_error)?
                }
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "theorem must be 1, 2 or 3, got {other}"
                )))
            }
        };
        Ok(theorem_json(&result).to_string())
    }

    fn __eq__(&self, other: &PyGame) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Game(players={:?}, coalitions={})",
            self.players(),
            self.inner.coalitions().count()
        )
    }
}

/// An exact union of axis-aligned boxes over a game's players.
#[pyclass(name = "Region", frozen)]
struct PyRegion {
    inner: Region,
}

impl PyRegion {
    fn point_over(&self, values: Vec<Rat>) -> PyResult<PayoffVector> {
        let vals: Vec<Rational> = values
            .iter()
            .map(Rat::to_rational)
            .collect::<PyResult<_>>()?;
        PayoffVector::new(self.inner.players(), vals).map_err(to_value_error)
    }
}

type PyInterval = (Option<String>, bool, Option<String>, bool);

#[pymethods]
impl PyRegion {
    fn players(&self) -> Vec<u32> {
        members_list(self.inner.players())
    }

    /// Canonical boxes as per-axis `(lower, lower_closed, upper,
    /// upper_closed)` tuples; `None` endpoints are infinite.
    fn boxes(&self) -> Vec<Vec<PyInterval>> {
        self.inner
            .boxes()
            .iter()
            .map(|b| {
                b.intervals()
                    .iter()
                    .map(|iv| {
                        (
                            iv.lower().as_finite().map(format_rational),
                            iv.lower_closed(),
                            iv.upper().as_finite().map(format_rational),
                            iv.upper_closed(),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    fn is_bounded(&self) -> bool {
        self.inner.is_bounded()
    }

    fn contains(&self, point: Vec<Rat>) -> PyResult<bool> {
        let x = self.point_over(point)?;
        self.inner.contains_point(&x).map_err(to_value_error)
    }

    fn is_subset_of(&self, other: &PyRegion) -> PyResult<bool> {
        self.inner.is_subset_of(&other.inner).map_err(to_value_error)
    }

    fn union(&self, other: &PyRegion) -> PyResult<PyRegion> {
        Ok(PyRegion {
            inner: self.inner.union(&other.inner).map_err(to_value_error)?,
        })
    }

    fn intersect(&self, other: &PyRegion) -> PyResult<PyRegion> {
        Ok(PyRegion {
            inner: self.inner.intersect(&other.inner).map_err(to_value_error)?,
        })
    }

    fn difference(&self, other: &PyRegion) -> PyResult<PyRegion> {
        Ok(PyRegion {
            inner: self.inner.difference(&other.inner).map_err(to_value_error)?,
        })
    }

    fn complement(&self) -> PyRegion {
        PyRegion {
            inner: self.inner.complement(),
        }
    }

    /// Representative points of every canonical cell.
    fn sample_points(&self) -> Vec<Vec<String>> {
        self.inner.sample_points().iter().map(values_list).collect()
    }

    fn __eq__(&self, other: &PyRegion) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Region({})", self.inner.to_string().replace('\n', " | "))
    }
}

/// Search seeded random games for axiom violations; returns a JSON string
/// with one reproduction bundle per violation.
#[pyfunction]
#[pyo3(signature = (solution, axioms, seed, players, trials, max_generators=3))]
fn counterexample_search(
    solution: &str,
    axioms: Vec<String>,
    seed: u64,
    players: u32,
    trials: u32,
    max_generators: u32,
) -> PyResult<String> {
    let sol = Solution::builtin(solution).map_err(to_value_error)?;
    let axioms: Vec<AxiomId> = axioms
        .iter()
        .map(|a| a.parse().map_err(to_value_error))
        .collect::<PyResult<_>>()?;
    let mut cfg = GenConfig::new(seed, players);
    cfg.max_generators = max_generators;
    let outcome = ntukit::harness::counterexample_search(&sol, &axioms, &cfg, trials)
        .map_err(to_value_error)?;
    Ok(ntukit::harness::report::search_json(&outcome).to_string())
}

#[pymodule]
fn ntukit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGame>()?;
    m.add_class::<PyRegion>()?;
    m.add_function(wrap_pyfunction!(counterexample_search, m)?)?;
    Ok(())
}
