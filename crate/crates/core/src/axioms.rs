//! Solutions as named game-to-region maps, and instance-level deciders for
//! the nine solution axioms, each producing a re-checkable witness on
//! violation.
//!
//! PO, AM and WISPC are decided exactly through region algebra. SSC, WSC
//! and CSSC quantify over a continuum, so they are discharged by cell-aware
//! sampling and their reports carry a "sampled" note: a violation is
//! definitive, a pass means no violation at the sampled points. The WC
//! probe checks an explicit finite sequence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::game::{Coalition, NTUGame, PayoffVector};
use crate::rational::{Extended, Rational};
use crate::reductions::{ss_reduced, ws_reduced};
use crate::region::{
    coalition_hull_region, core_region, feasible_region, hausdorff_linf, ir_region,
    pareto_region, Region,
};

/// Stable axiom identifiers; also the CLI vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    Po,
    Nespg,
    Irec,
    Ssc,
    Cssc,
    Wsc,
    Wc,
    Am,
    Wispc,
}

impl AxiomId {
    pub const ALL: [AxiomId; 9] = [
        AxiomId::Po,
        AxiomId::Nespg,
        AxiomId::Irec,
        AxiomId::Ssc,
        AxiomId::Cssc,
        AxiomId::Wsc,
        AxiomId::Wc,
        AxiomId::Am,
        AxiomId::Wispc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Po => "po",
            AxiomId::Nespg => "nespg",
            AxiomId::Irec => "irec",
            AxiomId::Ssc => "ssc",
            AxiomId::Cssc => "cssc",
            AxiomId::Wsc => "wsc",
            AxiomId::Wc => "wc",
            AxiomId::Am => "am",
            AxiomId::Wispc => "wispc",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AxiomError {
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("unknown solution {0:?}")]
    UnknownSolution(String),
    #[error("sequence game {index} has player set {got}, the limit game has {expected}")]
    SequencePlayerMismatch {
        index: usize,
        expected: Coalition,
        got: Coalition,
    },
    #[error("sequence game {index} differs from the limit game on proper coalition {coalition}")]
    SequenceCoalitionMismatch { index: usize, coalition: Coalition },
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, AxiomError> {
        let lower = s.trim().to_ascii_lowercase();
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| AxiomError::UnknownAxiom(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violated,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Structured evidence for a violation, in terms the predicates module can
/// re-check independently of the region machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A solution point outside the required target set (PO).
    Point { x: PayoffVector },
    /// An agreement whose restriction leaves the reduced game's solution
    /// (SSC/WSC).
    ReducedMembership { x: PayoffVector, s: Coalition },
    /// A Pareto point consistent on every reduced game yet excluded (CSSC).
    ConsistentPointExcluded { x: PayoffVector },
    /// The solution is empty although the axiom requires a point.
    EmptySolution,
    /// A solution point of the richer game missing after impoverishment
    /// (AM).
    NotInImpoverished { x: PayoffVector },
    /// A proximal-coalition pair where even the worst-paid member of `y`
    /// beats every member's payoff in `x` (WISPC).
    ProximalGap {
        s: Coalition,
        x: PayoffVector,
        y: PayoffVector,
    },
    /// The sequence limit escapes the solution of the limit game (WC).
    LimitEscapes { x: PayoffVector },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point { x } => write!(f, "x={x}"),
            Witness::ReducedMembership { x, s } => write!(f, "x={x}, S={s}"),
            Witness::ConsistentPointExcluded { x } => write!(f, "x={x}"),
            Witness::EmptySolution => write!(f, "empty solution"),
            Witness::NotInImpoverished { x } => write!(f, "x={x}"),
            Witness::ProximalGap { s, x, y } => write!(f, "S={s}, x={x}, y={y}"),
            Witness::LimitEscapes { x } => write!(f, "limit x={x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    fn pass(axiom: AxiomId) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Pass,
            witness: None,
            notes: Vec::new(),
        }
    }

    fn violated(axiom: AxiomId, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Violated,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    fn not_applicable(axiom: AxiomId, note: impl Into<String>) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::NotApplicable,
            witness: None,
            notes: vec![note.into()],
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        if !self.notes.is_empty() {
            write!(f, " ({})", self.notes.join("; "))?;
        }
        Ok(())
    }
}

type EvalFn = dyn Fn(&NTUGame) -> Region + Send + Sync;

/// A named map from games to subsets of their feasible sets. Evaluations
/// are memoized per game, since the axiom checkers revisit the same
/// subgames and reduced games repeatedly.
#[derive(Clone)]
pub struct Solution {
    name: String,
    eval: Arc<EvalFn>,
    cache: Arc<Mutex<HashMap<NTUGame, Region>>>,
}

impl Solution {
    /// Wraps an arbitrary map, clipping its output to the feasible region
    /// so the result is a solution in the formal sense.
    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Solution
    where
        F: Fn(&NTUGame) -> Region + Send + Sync + 'static,
    {
        Solution::raw(name, move |g| {
            f(g).intersect(&feasible_region(g))
                .expect("solution output over the game's players")
        })
    }

    fn raw<F>(name: impl Into<String>, f: F) -> Solution
    where
        F: Fn(&NTUGame) -> Region + Send + Sync + 'static,
    {
        Solution {
            name: name.into(),
            eval: Arc::new(f),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn core() -> Solution {
        Solution::raw("core", core_region)
    }

    pub fn pareto() -> Solution {
        Solution::raw("pareto", pareto_region)
    }

    pub fn ir() -> Solution {
        Solution::raw("ir", ir_region)
    }

    pub fn ir_pareto() -> Solution {
        Solution::raw("ir-pareto", |g| {
            ir_region(g)
                .intersect(&pareto_region(g))
                .expect("same players")
        })
    }

    pub fn feasible() -> Solution {
        Solution::raw("feasible", feasible_region)
    }

    pub fn empty() -> Solution {
        Solution::raw("empty", |g| Region::empty(g.players()))
    }

    /// Looks up a built-in by its stable name, case-insensitively.
    pub fn builtin(name: &str) -> Result<Solution, AxiomError> {
        match name.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "core" => Ok(Solution::core()),
            "pareto" => Ok(Solution::pareto()),
            "ir" => Ok(Solution::ir()),
            "ir-pareto" => Ok(Solution::ir_pareto()),
            "feasible" => Ok(Solution::feasible()),
            "empty" => Ok(Solution::empty()),
            _ => Err(AxiomError::UnknownSolution(name.to_string())),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 6] =
        ["core", "pareto", "ir", "ir-pareto", "feasible", "empty"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(&self, game: &NTUGame) -> Region {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(game) {
            return hit.clone();
        }
        let region = (self.eval)(game);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(game.clone(), region.clone());
        region
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solution").field("name", &self.name).finish()
    }
}

/// Pareto optimality: the solution lies inside the weak-Pareto set.
pub fn check_po(sol: &Solution, game: &NTUGame) -> AxiomReport {
    let sr = sol.evaluate(game);
    let diff = sr.difference(&pareto_region(game)).expect("same players");
    match diff.sample_points().into_iter().next() {
        None => AxiomReport::pass(AxiomId::Po),
        Some(x) => AxiomReport::violated(AxiomId::Po, Witness::Point { x }),
    }
}

/// Non-emptiness for single-player games.
pub fn check_nespg(sol: &Solution, game: &NTUGame) -> AxiomReport {
    if game.num_players() != 1 {
        return AxiomReport::not_applicable(AxiomId::Nespg, "only single-player games");
    }
    if sol.evaluate(game).is_empty() {
        AxiomReport::violated(AxiomId::Nespg, Witness::EmptySolution)
    } else {
        AxiomReport::pass(AxiomId::Nespg)
    }
}

/// Irrelevance of sigma-empty coalitions: when every non-singleton proper
/// subgame has an empty solution and an individually rational payoff
/// exists, the grand solution must be nonempty.
pub fn check_irec(sol: &Solution, game: &NTUGame) -> AxiomReport {
    for s in game.players().proper_nonempty_subsets() {
        if s.len() < 2 {
            continue;
        }
        let sub = game.subgame(s).expect("proper subset");
        if !sol.evaluate(&sub).is_empty() {
            return AxiomReport::not_applicable(
                AxiomId::Irec,
                format!("premise fails: solution of subgame on {s} is nonempty"),
            );
        }
    }
    if ir_region(game).is_empty() {
        return AxiomReport::not_applicable(
            AxiomId::Irec,
            "premise fails: no individually rational payoff",
        );
    }
    if sol.evaluate(game).is_empty() {
        AxiomReport::violated(AxiomId::Irec, Witness::EmptySolution)
    } else {
        AxiomReport::pass(AxiomId::Irec)
    }
}

/// Sample set for the secession checks: the cells of the solution region
/// plus the cells of its part outside the core, where consistency
/// violations concentrate.
fn secession_samples(domain: &Region, game: &NTUGame) -> Vec<PayoffVector> {
    let mut points: BTreeSet<PayoffVector> = domain.sample_points().into_iter().collect();
    let outside_core = domain.difference(&core_region(game)).expect("same players");
    points.extend(outside_core.sample_points());
    points.into_iter().collect()
}

type ReduceFn =
    fn(&NTUGame, Coalition, &PayoffVector) -> Result<NTUGame, crate::reductions::ReductionError>;

fn check_secession(
    axiom: AxiomId,
    sol: &Solution,
    game: &NTUGame,
    reduce: ReduceFn,
) -> AxiomReport {
    let sr = sol.evaluate(game);
    let pareto = pareto_region(game);
    let mut restricted = false;
    let domain = if sr.is_subset_of(&pareto).expect("same players") {
        sr
    } else {
        restricted = true;
        sr.intersect(&pareto).expect("same players")
    };
    for x in secession_samples(&domain, game) {
        for s in game.players().proper_nonempty_subsets() {
            let reduced = reduce(game, s, &x).expect("sampled point is Pareto");
            let xs = x.restrict(s).expect("subset");
            if !sol
                .evaluate(&reduced)
                .contains_point(&xs)
                .expect("same players")
            {
                let mut report = AxiomReport::violated(axiom, Witness::ReducedMembership { x, s })
                    .with_note("sampled");
                if restricted {
                    report = report.with_note("restricted to Pareto part of the solution");
                }
                return report;
            }
        }
    }
    let mut report = AxiomReport::pass(axiom).with_note("sampled");
    if restricted {
        report = report.with_note("restricted to Pareto part of the solution");
    }
    report
}

/// Strong secession consistency, sampled over the solution's cells.
pub fn check_ssc(sol: &Solution, game: &NTUGame) -> AxiomReport {
    check_secession(AxiomId::Ssc, sol, game, ss_reduced)
}

/// Weak secession consistency, sampled over the solution's cells.
pub fn check_wsc(sol: &Solution, game: &NTUGame) -> AxiomReport {
    check_secession(AxiomId::Wsc, sol, game, ws_reduced)
}

/// Converse strong secession consistency, sampled over the Pareto cells:
/// any sampled efficient point accepted by every strong-secession reduced
/// game must be in the solution.
pub fn check_cssc(sol: &Solution, game: &NTUGame) -> AxiomReport {
    if game.num_players() < 2 {
        return AxiomReport::not_applicable(AxiomId::Cssc, "needs at least two players");
    }
    let sr = sol.evaluate(game);
    for x in pareto_region(game).sample_points() {
        let premise = game.players().proper_nonempty_subsets().all(|s| {
            let reduced = ss_reduced(game, s, &x).expect("sampled point is Pareto");
            let xs = x.restrict(s).expect("subset");
            sol.evaluate(&reduced)
                .contains_point(&xs)
                .expect("same players")
        });
        if premise && !sr.contains_point(&x).expect("same players") {
            return AxiomReport::violated(AxiomId::Cssc, Witness::ConsistentPointExcluded { x })
                .with_note("sampled");
        }
    }
    AxiomReport::pass(AxiomId::Cssc).with_note("sampled")
}

/// Antimonotonicity against an explicitly impoverished partner game:
/// proper coalitions may only shrink, the grand set is unchanged, and then
/// the solution may only grow.
pub fn check_am(sol: &Solution, game: &NTUGame, impoverished: &NTUGame) -> AxiomReport {
    if impoverished.players() != game.players() {
        return AxiomReport::not_applicable(AxiomId::Am, "premise fails: player sets differ");
    }
    if impoverished.grand_generators() != game.grand_generators() {
        return AxiomReport::not_applicable(
            AxiomId::Am,
            "premise fails: grand-coalition set changed",
        );
    }
    for s in game.players().proper_nonempty_subsets() {
        let poorer = coalition_hull_region(impoverished, s).expect("coalition of the game");
        let richer = coalition_hull_region(game, s).expect("coalition of the game");
        if !poorer.is_subset_of(&richer).expect("same players") {
            return AxiomReport::not_applicable(
                AxiomId::Am,
                format!("premise fails: payoff set of {s} grew"),
            );
        }
    }
    let before = sol.evaluate(game);
    let after = sol.evaluate(impoverished);
    let diff = before.difference(&after).expect("same players");
    match diff.sample_points().into_iter().next() {
        None => AxiomReport::pass(AxiomId::Am),
        Some(x) => AxiomReport::violated(AxiomId::Am, Witness::NotInImpoverished { x }),
    }
}

/// Weak internal stability for proximal coalitions, decided exactly: for
/// each coalition one player short of the grand one, the infimum of
/// `max_{j in S} x_j` over the solution must reach the supremum of
/// `min_{j in S} y_j` over the subgame's solution. A strict gap is
/// equivalent to the existence of a violating pair, whatever the
/// attainment of either bound; the witness pair is rebuilt from the
/// extremal cells.
pub fn check_wispc(sol: &Solution, game: &NTUGame) -> AxiomReport {
    if game.num_players() < 2 {
        return AxiomReport::not_applicable(AxiomId::Wispc, "needs at least two players");
    }
    let sr = sol.evaluate(game);
    if sr.is_empty() {
        return AxiomReport::pass(AxiomId::Wispc).with_note("solution empty, vacuous");
    }
    let n = game.players();
    for s in n.proper_nonempty_subsets().filter(|s| s.len() == n.len() - 1) {
        let sub_sol = sol.evaluate(&game.subgame(s).expect("proper subset"));
        if sub_sol.is_empty() {
            continue;
        }
        let m_star = sr.inf_max_coordinate(s).expect("nonempty region");
        let s_star = sub_sol.sup_min_coordinate(s).expect("nonempty region");
        if m_star.value < s_star.value {
            let threshold = gap_threshold(&m_star.value, &s_star.value);
            let x = sr
                .point_with_coords_below(s, &threshold)
                .expect("strict gap admits a grand point below the threshold");
            let y = sub_sol
                .point_with_coords_above(s, &threshold)
                .expect("strict gap admits a subgame point above the threshold");
            return AxiomReport::violated(AxiomId::Wispc, Witness::ProximalGap { s, x, y });
        }
    }
    AxiomReport::pass(AxiomId::Wispc)
}

/// A rational strictly between the two bounds of a nonempty gap. The upper
/// bound is always finite here (solutions live under finitely many
/// generators), the lower may be `-inf`.
fn gap_threshold(low: &Extended, high: &Extended) -> Rational {
    let h = high
        .as_finite()
        .expect("suprema over feasible sets are finite");
    match low.as_finite() {
        Some(l) => (l + h) / Rational::from_integer(2.into()),
        None => h - Rational::from_integer(1.into()),
    }
}

/// Weak-continuity probe over an explicit finite sequence: checks the
/// axiom's premises on the prefix (membership of each point in its game's
/// solution, games converging to the limit game, points converging to the
/// limit point) and then the conclusion at the limit. Instance evidence,
/// not a proof of the axiom.
pub fn wc_probe(
    seq: &[(NTUGame, PayoffVector)],
    limit_game: &NTUGame,
    limit_point: &PayoffVector,
    sol: &Solution,
) -> Result<AxiomReport, AxiomError> {
    for (index, (game_k, _)) in seq.iter().enumerate() {
        if game_k.players() != limit_game.players() {
            return Err(AxiomError::SequencePlayerMismatch {
                index,
                expected: limit_game.players(),
                got: game_k.players(),
            });
        }
        for s in limit_game.players().proper_nonempty_subsets() {
            if game_k.generator_set(s).expect("full assignment")
                != limit_game.generator_set(s).expect("full assignment")
            {
                return Err(AxiomError::SequenceCoalitionMismatch { index, coalition: s });
            }
        }
    }

    for (k, (game_k, x_k)) in seq.iter().enumerate() {
        if !sol
            .evaluate(game_k)
            .contains_point(x_k)
            .expect("same players")
        {
            return Ok(AxiomReport::not_applicable(
                AxiomId::Wc,
                format!("premise fails: x^{k} is not in the solution of game {k}"),
            ));
        }
    }

    let mut last_game_dist: Option<Rational> = None;
    let mut last_point_dist: Option<Rational> = None;
    for (k, (game_k, x_k)) in seq.iter().enumerate() {
        let gd = hausdorff_linf(game_k, limit_game).expect("same players");
        if let Some(prev) = &last_game_dist {
            if gd > *prev {
                return Ok(AxiomReport::not_applicable(
                    AxiomId::Wc,
                    format!("premise fails: Hausdorff distance increases at step {k}"),
                ));
            }
        }
        last_game_dist = Some(gd);
        let pd = x_k.linf_distance(limit_point);
        if let Some(prev) = &last_point_dist {
            if pd > *prev {
                return Ok(AxiomReport::not_applicable(
                    AxiomId::Wc,
                    format!("premise fails: point distance increases at step {k}"),
                ));
            }
        }
        last_point_dist = Some(pd);
    }

    if sol
        .evaluate(limit_game)
        .contains_point(limit_point)
        .expect("same players")
    {
        Ok(AxiomReport::pass(AxiomId::Wc).with_note("finite-prefix probe"))
    } else {
        Ok(AxiomReport::violated(
            AxiomId::Wc,
            Witness::LimitEscapes {
                x: limit_point.clone(),
            },
        )
        .with_note("finite-prefix probe"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::reductions::{epsilon_sequence, Epsilon};
    use crate::testutil::{coal, game_a, pv};

    #[test]
    fn axiom_ids_roundtrip() {
        for a in AxiomId::ALL {
            assert_eq!(a.name().parse::<AxiomId>().unwrap(), a);
        }
        assert!("nope".parse::<AxiomId>().is_err());
        assert_eq!("WISPC".parse::<AxiomId>().unwrap(), AxiomId::Wispc);
    }

    #[test]
    fn builtin_lookup() {
        for name in Solution::BUILTIN_NAMES {
            assert_eq!(Solution::builtin(name).unwrap().name(), name);
        }
        assert_eq!(Solution::builtin("CORE").unwrap().name(), "core");
        assert_eq!(Solution::builtin("IR_PARETO").unwrap().name(), "ir-pareto");
        assert!(Solution::builtin("kernel").is_err());
    }

    #[test]
    fn po_examples() {
        let g = game_a();
        assert_eq!(check_po(&Solution::core(), &g).verdict, Verdict::Pass);
        assert_eq!(check_po(&Solution::empty(), &g).verdict, Verdict::Pass);
        let r = check_po(&Solution::feasible(), &g);
        assert_eq!(r.verdict, Verdict::Violated);
        // The witness re-validates through the predicates module.
        let Some(Witness::Point { x }) = r.witness else {
            panic!("expected point witness");
        };
        assert!(!crate::predicates::is_pareto(&g, &x));
        assert!(crate::predicates::contains(&g, g.players(), &x).unwrap());
    }

    #[test]
    fn nespg_examples() {
        let single = crate::game::NTUGame::from_rows(&[0], &[(&[0], &[&[rat_int(5)]])]).unwrap();
        assert_eq!(
            check_nespg(&Solution::core(), &single).verdict,
            Verdict::Pass
        );
        assert_eq!(
            check_nespg(&Solution::empty(), &single).verdict,
            Verdict::Violated
        );
        assert_eq!(
            check_nespg(&Solution::core(), &game_a()).verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn irec_examples() {
        let g = game_a();
        // Two players: the subcoalition premise is vacuous, IR is nonempty.
        assert_eq!(check_irec(&Solution::core(), &g).verdict, Verdict::Pass);
        assert_eq!(
            check_irec(&Solution::empty(), &g).verdict,
            Verdict::Violated
        );
    }

    #[test]
    fn irec_not_applicable_when_premise_fails() {
        let g3 = crate::game::NTUGame::from_rows(
            &[0, 1, 2],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(0)]]),
                (&[2], &[&[rat_int(0)]]),
                (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
                (&[0, 2], &[&[rat_int(0), rat_int(0)]]),
                (&[1, 2], &[&[rat_int(0), rat_int(0)]]),
                (&[0, 1, 2], &[&[rat_int(1), rat_int(1), rat_int(1)]]),
            ],
        )
        .unwrap();
        // The {0,1} subgame has a nonempty core, so the premise fails.
        let r = check_irec(&Solution::core(), &g3);
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn ssc_core_passes_on_game_a() {
        let r = check_ssc(&Solution::core(), &game_a());
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.notes.iter().any(|n| n == "sampled"));
    }

    #[test]
    fn ssc_pareto_violated_on_game_a() {
        let g = game_a();
        let r = check_ssc(&Solution::pareto(), &g);
        assert_eq!(r.verdict, Verdict::Violated);
        let Some(Witness::ReducedMembership { x, s }) = &r.witness else {
            panic!("expected reduced membership witness");
        };
        // Re-validate: x is Pareto but its restriction is strictly inside
        // the reduced game's payoff set, hence inefficient there.
        assert!(crate::predicates::is_pareto(&g, x));
        let reduced = ss_reduced(&g, *s, x).unwrap();
        let xs = x.restrict(*s).unwrap();
        assert!(!crate::predicates::is_pareto(&reduced, &xs));
    }

    #[test]
    fn wsc_examples() {
        let g = game_a();
        assert_eq!(check_wsc(&Solution::core(), &g).verdict, Verdict::Pass);
        // WSC is weaker than SSC: the always-pinned reduced game keeps the
        // agreement efficient, so PARETO passes here although SSC fails.
        assert_eq!(check_wsc(&Solution::pareto(), &g).verdict, Verdict::Pass);
    }

    #[test]
    fn cssc_examples() {
        let g = game_a();
        assert_eq!(check_cssc(&Solution::core(), &g).verdict, Verdict::Pass);
        // EMPTY passes vacuously: no sampled point satisfies the premise.
        assert_eq!(check_cssc(&Solution::empty(), &g).verdict, Verdict::Pass);
        let single =
            crate::game::NTUGame::from_rows(&[0], &[(&[0], &[&[rat_int(1)]])]).unwrap();
        assert_eq!(
            check_cssc(&Solution::core(), &single).verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn am_examples() {
        let g = game_a();
        let impoverished = crate::game::NTUGame::from_rows(
            &[0, 1],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(-1)]]),
                (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
            ],
        )
        .unwrap();
        assert_eq!(
            check_am(&Solution::core(), &g, &impoverished).verdict,
            Verdict::Pass
        );
        assert_eq!(check_am(&Solution::core(), &g, &g).verdict, Verdict::Pass);
        assert_eq!(
            check_am(&Solution::ir(), &g, &impoverished).verdict,
            Verdict::Pass
        );
        // Premise violation: the grand set changed.
        let bigger = crate::game::NTUGame::from_rows(
            &[0, 1],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(0)]]),
                (&[0, 1], &[&[rat_int(2), rat_int(2)]]),
            ],
        )
        .unwrap();
        assert_eq!(
            check_am(&Solution::core(), &g, &bigger).verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn wispc_examples() {
        let g = game_a();
        assert_eq!(check_wispc(&Solution::core(), &g).verdict, Verdict::Pass);
        assert_eq!(check_wispc(&Solution::empty(), &g).verdict, Verdict::Pass);
        // A solution holding a sub-IR point violates WISPC: the singleton
        // subgame solution pays b_i, beating the grand allocation.
        let planted = pv(&[0, 1], &[rat_int(1), rat_int(-5)]);
        let sol = Solution::from_fn("core+planted", {
            let planted = planted.clone();
            move |g| {
                if g.players() == planted.coalition() {
                    core_region(g)
                        .union(&Region::point(&planted))
                        .expect("same players")
                } else {
                    core_region(g)
                }
            }
        });
        let r = check_wispc(&sol, &g);
        assert_eq!(r.verdict, Verdict::Violated);
        let Some(Witness::ProximalGap { s, x, y }) = &r.witness else {
            panic!("expected proximal gap witness");
        };
        // Re-validate the gap arithmetic on the witness pair.
        assert_eq!(*s, coal(&[1]));
        let max_x = s.members().map(|p| x.get(p).unwrap().clone()).max().unwrap();
        let min_y = s.members().map(|p| y.get(p).unwrap().clone()).min().unwrap();
        assert!(max_x < min_y);
    }

    #[test]
    fn wc_probe_on_the_halving_sequence() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let seq = epsilon_sequence(&g, &x, &Epsilon::new(rat_int(1)).unwrap(), 4).unwrap();
        let r = wc_probe(&seq, &g, &x, &Solution::core()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn wc_probe_single_element_sequence_is_membership() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let seq = vec![(g.clone(), x.clone())];
        let r = wc_probe(&seq, &g, &x, &Solution::core()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let outside = pv(&[0, 1], &[rat_int(0), rat_int(0)]);
        let seq = vec![(g.clone(), x.clone())];
        let r = wc_probe(&seq, &g, &outside, &Solution::core()).unwrap();
        // x^k stays at a fixed distance from the claimed limit, so the
        // premises hold; the claimed limit escapes the core.
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn wc_probe_detects_escaping_limit() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let seq = epsilon_sequence(&g, &x, &Epsilon::new(rat_int(1)).unwrap(), 3).unwrap();
        // Lower the limit game's grand set: the x^k stay in their games'
        // cores but the limit point is no longer feasible at the limit.
        let sunk = crate::game::NTUGame::from_rows(
            &[0, 1],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(0)]]),
                (&[0, 1], &[&[rat(1, 2), rat(1, 2)]]),
            ],
        )
        .unwrap();
        let r = wc_probe(&seq, &sunk, &x, &Solution::core()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn wc_probe_rejects_mismatched_sequences() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let other = crate::game::NTUGame::from_rows(
            &[0, 1],
            &[
                (&[0], &[&[rat_int(-1)]]),
                (&[1], &[&[rat_int(0)]]),
                (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
            ],
        )
        .unwrap();
        let seq = vec![(other, x.clone())];
        assert!(matches!(
            wc_probe(&seq, &g, &x, &Solution::core()),
            Err(AxiomError::SequenceCoalitionMismatch { .. })
        ));
    }

    #[test]
    fn solution_invariant_clips_to_feasible() {
        let g = game_a();
        let wild = Solution::from_fn("wild", |g| Region::full(g.players()));
        let r = wild.evaluate(&g);
        assert_eq!(r, feasible_region(&g));
    }

    #[test]
    fn am_core_grows_when_singleton_impoverished() {
        // Shrinking player 1's singleton set relaxes that IR cut: the core
        // gains the face points (1, t) for t in [-1, 0).
        let g = game_a();
        let impoverished = crate::game::NTUGame::from_rows(
            &[0, 1],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(-1)]]),
                (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
            ],
        )
        .unwrap();
        let before = core_region(&g);
        let after = core_region(&impoverished);
        assert!(before.is_subset_of(&after).unwrap());
        let gained = pv(&[0, 1], &[rat_int(1), rat_int(-1)]);
        assert!(!before.contains_point(&gained).unwrap());
        assert!(after.contains_point(&gained).unwrap());
    }
}
