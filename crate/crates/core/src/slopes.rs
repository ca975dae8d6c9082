//! Semi-decision of slopes and budgeted enumeration of the slope set.
//!
//! A slope `θ` belongs to the slope set when some tiling is periodic along
//! a vector of direction `θ` and along no other direction. Membership is
//! witnessed by a direction-only strip-graph witness at some multiple of
//! the primitive vector, so probing multiples in turn semi-decides it; the
//! budgets make every run terminate.

use crate::periodicity::{decide_periodic_with, Budget, Decision, PeriodicWitness};
use crate::tiling::{PeriodVector, Slope, TilingSystem};
use serde_json::json;
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeQuery {
    pub slope: Slope,
    pub max_multiple: u32,
    pub node_budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeOutcome {
    Found {
        vector: PeriodVector,
        witness: PeriodicWitness,
    },
    /// No witness among the probed multiples; `budget_exceeded` records
    /// whether some probe ran out of budget.
    Unknown { budget_exceeded: bool },
}

enum Probe {
    Found(PeriodVector, PeriodicWitness),
    Absent,
    OverBudget,
}

fn probe(system: &TilingSystem, slope: Slope, m: u32, budget: &Budget) -> Probe {
    let Ok(v) = slope.base_vector().scale(m as i64) else {
        return Probe::Absent;
    };
    match decide_periodic_with(system, v, budget) {
        Ok(Decision::DirectionOnly(w)) => Probe::Found(v, w),
        Ok(_) => Probe::Absent,
        Err(_) => Probe::OverBudget,
    }
}

/// Tests `m·(p,q)` for `m = 1..=max_multiple` and returns the first
/// direction-only witness.
pub fn slope_semidecide(system: &TilingSystem, query: &SlopeQuery) -> SlopeOutcome {
    let budget = Budget::with_nodes(query.node_budget);
    let mut budget_exceeded = false;
    for m in 1..=query.max_multiple.max(1) {
        match probe(system, query.slope, m, &budget) {
            Probe::Found(vector, witness) => return SlopeOutcome::Found { vector, witness },
            Probe::Absent => {}
            Probe::OverBudget => budget_exceeded = true,
        }
    }
    SlopeOutcome::Unknown { budget_exceeded }
}

/// Canonical slopes with `|numerator|, |denominator| ≤ bound`: zero, the
/// positive slopes in breadth-first Stern–Brocot order, the negative ones in
/// the mirrored order, then infinity.
pub fn slope_schedule(bound: u32) -> Vec<Slope> {
    let b = bound as i64;
    let mut positive = Vec::new();
    let mut queue = VecDeque::from([((0i64, 1i64), (1i64, 0i64))]);
    while let Some(((a, c), (e, d))) = queue.pop_front() {
        let (num, den) = (a + e, c + d);
        if num > b || den > b {
            continue;
        }
        positive.push((num, den));
        queue.push_back(((a, c), (num, den)));
        queue.push_back(((num, den), (e, d)));
    }
    let mk = |n: i64, d: i64| Slope::new(n, d).expect("nonzero denominator");
    let mut out = vec![mk(0, 1)];
    out.extend(positive.iter().map(|&(n, d)| mk(n, d)));
    out.extend(positive.iter().map(|&(n, d)| mk(-n, d)));
    out.push(Slope::INFINITY);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeLimits {
    pub slope_bound: u32,
    pub max_multiple: u32,
    pub node_budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeReport {
    /// Slopes with a direction-only witness, in schedule order.
    pub found: Vec<(Slope, PeriodVector, PeriodicWitness)>,
    /// Slopes whose every probe completed without a witness.
    pub exhausted: Vec<Slope>,
    /// Slopes for which some probe exceeded the budget.
    pub unknown: Vec<Slope>,
    pub limits: SlopeLimits,
}

/// Dovetails [`slope_semidecide`] over the schedule: round `m` probes the
/// `m`-th multiple of every slope not yet found.
pub fn enumerate_slopes(system: &TilingSystem, limits: SlopeLimits) -> SlopeReport {
    let schedule = slope_schedule(limits.slope_bound.max(1));
    let budget = Budget::with_nodes(limits.node_budget);
    let mut found: Vec<Option<(PeriodVector, PeriodicWitness)>> = vec![None; schedule.len()];
    let mut over = vec![false; schedule.len()];
    for m in 1..=limits.max_multiple.max(1) {
        for (i, &s) in schedule.iter().enumerate() {
            if found[i].is_some() {
                continue;
            }
            match probe(system, s, m, &budget) {
                Probe::Found(v, w) => found[i] = Some((v, w)),
                Probe::Absent => {}
                Probe::OverBudget => over[i] = true,
            }
        }
    }
    let mut report = SlopeReport {
        found: Vec::new(),
        exhausted: Vec::new(),
        unknown: Vec::new(),
        limits,
    };
    for (i, s) in schedule.into_iter().enumerate() {
        match found[i].take() {
            Some((v, w)) => report.found.push((s, v, w)),
            None if over[i] => report.unknown.push(s),
            None => report.exhausted.push(s),
        }
    }
    report
}

fn fraction(s: Slope) -> String {
    format!("{}/{}", s.numerator, s.denominator)
}

impl SlopeReport {
    pub fn found_slopes(&self) -> Vec<Slope> {
        self.found.iter().map(|(s, _, _)| *s).collect()
    }

    /// One line per scheduled slope, in schedule order.
    pub fn to_lines(&self) -> String {
        let budget = format!(
            "multiples<={},nodes<={}",
            self.limits.max_multiple, self.limits.node_budget
        );
        let mut out = String::new();
        for s in slope_schedule(self.limits.slope_bound.max(1)) {
            if let Some((_, v, _)) = self.found.iter().find(|(t, _, _)| *t == s) {
                out.push_str(&format!("SLOPE {} FOUND vector=({},{})\n", fraction(s), v.p, v.q));
            } else if self.unknown.contains(&s) {
                out.push_str(&format!(
                    "SLOPE {} UNKNOWN budget={budget} status=budget-exceeded\n",
                    fraction(s)
                ));
            } else {
                out.push_str(&format!(
                    "SLOPE {} UNKNOWN budget={budget} status=exhausted\n",
                    fraction(s)
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let found: Vec<_> = self
            .found
            .iter()
            .map(|(s, v, w)| {
                json!({
                    "slope": fraction(*s),
                    "vector": [v.p, v.q],
                    "k": w.k,
                    "cycle_a": w.cycle_a,
                    "connector": w.connector,
                    "cycle_b": w.cycle_b,
                })
            })
            .collect();
        json!({
            "slope_bound": self.limits.slope_bound,
            "max_multiple": self.limits.max_multiple,
            "node_budget": self.limits.node_budget,
            "found": found,
            "exhausted": self.exhausted.iter().map(|s| fraction(*s)).collect::<Vec<_>>(),
            "unknown": self.unknown.iter().map(|s| fraction(*s)).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{single_tile, yb};
    use crate::periodicity::decide_periodic;
    use crate::tiling::Transform;

    fn limits(bound: u32, mult: u32) -> SlopeLimits {
        SlopeLimits {
            slope_bound: bound,
            max_multiple: mult,
            node_budget: Budget::DEFAULT_NODES,
        }
    }

    fn q(slope: Slope, m: u32) -> SlopeQuery {
        SlopeQuery {
            slope,
            max_multiple: m,
            node_budget: Budget::DEFAULT_NODES,
        }
    }

    #[test]
    fn schedule_is_stern_brocot() {
        let s: Vec<String> = slope_schedule(2).iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["0", "1", "1/2", "2", "-1", "-1/2", "-2", "inf"]);
        let s3: Vec<String> = slope_schedule(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            &s3[..8],
            &["0", "1", "1/2", "2", "1/3", "2/3", "3/2", "3"]
        );
    }

    #[test]
    fn schedule_covers_all_bounded_fractions() {
        let sched = slope_schedule(6);
        let mut expected = 2; // zero and infinity
        for n in 1..=6u64 {
            for d in 1..=6u64 {
                let (mut a, mut b) = (n, d);
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                if a == 1 {
                    expected += 2;
                }
            }
        }
        assert_eq!(sched.len(), expected);
    }

    #[test]
    fn semidecide_examples() {
        let s = yb();
        match slope_semidecide(&s, &q(Slope::new(0, 1).unwrap(), 1)) {
            SlopeOutcome::Found { vector, .. } => assert_eq!(vector, PeriodVector { p: 1, q: 0 }),
            o => panic!("{o:?}"),
        }
        assert_eq!(
            slope_semidecide(&s, &q(Slope::INFINITY, 4)),
            SlopeOutcome::Unknown { budget_exceeded: false }
        );
        for sl in slope_schedule(2) {
            assert!(matches!(
                slope_semidecide(&single_tile(), &q(sl, 3)),
                SlopeOutcome::Unknown { .. }
            ));
        }
    }

    #[test]
    fn yb_slope_set() {
        let r = enumerate_slopes(&yb(), limits(2, 2));
        assert_eq!(r.found_slopes(), vec![Slope::new(0, 1).unwrap()]);
        assert!(r.unknown.is_empty());
        for (_, v, _) in &r.found {
            assert!(matches!(decide_periodic(&yb(), *v).unwrap(), Decision::DirectionOnly(_)));
        }
    }

    #[test]
    fn rotated_yb_has_vertical_slope() {
        let t = Transform::Rot90.system(&yb()).unwrap();
        let r = enumerate_slopes(&t, limits(2, 2));
        assert_eq!(r.found_slopes(), vec![Slope::INFINITY]);
    }

    #[test]
    fn single_tile_has_no_slopes() {
        assert!(enumerate_slopes(&single_tile(), limits(2, 2)).found.is_empty());
    }

    #[test]
    fn larger_budgets_keep_found_slopes() {
        let s = yb();
        let small = enumerate_slopes(&s, limits(1, 1)).found_slopes();
        let big = enumerate_slopes(&s, limits(3, 2)).found_slopes();
        assert!(small.iter().all(|x| big.contains(x)));
    }

    #[test]
    fn report_lines() {
        let r = enumerate_slopes(&yb(), limits(1, 1));
        let text = r.to_lines();
        assert!(text.starts_with("SLOPE 0/1 FOUND vector=(1,0)\n"));
        assert!(text.contains("SLOPE 1/0 UNKNOWN budget=multiples<=1,nodes<=2000000 status=exhausted"));
    }
}
