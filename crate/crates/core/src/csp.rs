//! Finite-domain constraint solver over nogoods.
//!
//! A nogood is a conjunction of literals `var ∈ set`; an assignment is
//! rejected when every literal of some nogood holds. Propagation removes
//! a literal's set from a variable's domain as soon as all the other
//! literals of the nogood are entailed, which amounts to forward checking
//! on general nogoods and to arc consistency on binary nogoods of the form
//! `x = a ∧ y ∈ S`.

use crate::bitset::BitSet;
use smallvec::SmallVec;
use std::collections::{HashMap, HashSet, VecDeque};

type Lit = (u32, u32);

#[derive(Debug, Clone)]
struct Nogood {
    lits: SmallVec<[Lit; 4]>,
}

/// The search ran out of its step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepBudgetHit {
    pub steps: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions<'a> {
    /// Variable order; defaults to `0..n`.
    pub order: Option<&'a [usize]>,
    /// Number of leading variables of `order` whose distinct assignments
    /// are enumerated; the remaining variables only need one completion.
    /// `None` enumerates full solutions.
    pub project: Option<usize>,
    pub step_budget: u64,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            order: None,
            project: None,
            step_budget: u64::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub steps: u64,
    pub solutions: u64,
}

#[derive(Debug, Clone)]
pub struct Csp {
    domains: Vec<BitSet>,
    sets: Vec<BitSet>,
    set_index: HashMap<BitSet, u32>,
    nogoods: Vec<Nogood>,
    watches: Vec<Vec<u32>>,
    nogood_index: HashSet<SmallVec<[Lit; 4]>>,
    infeasible: bool,
}

enum Flow {
    Continue,
    Stop,
    TailDone,
}

struct Run<'a, F> {
    domains: Vec<BitSet>,
    trail: Vec<(u32, BitSet)>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
    order: &'a [usize],
    project: usize,
    budget: u64,
    stats: SearchStats,
    on_solution: F,
}

impl Csp {
    pub fn new(domains: Vec<BitSet>) -> Self {
        let n = domains.len();
        let infeasible = domains.iter().any(|d| d.is_empty());
        Csp {
            domains,
            sets: Vec::new(),
            set_index: HashMap::new(),
            nogoods: Vec::new(),
            watches: vec![Vec::new(); n],
            nogood_index: HashSet::new(),
            infeasible,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn num_nogoods(&self) -> usize {
        self.nogoods.len()
    }

    pub fn domain(&self, var: usize) -> &BitSet {
        &self.domains[var]
    }

    /// Intersects the initial domain of `var` with `allowed`.
    pub fn restrict(&mut self, var: usize, allowed: &BitSet) {
        self.domains[var].intersect_with(allowed);
        if self.domains[var].is_empty() {
            self.infeasible = true;
        }
    }

    fn intern(&mut self, set: BitSet) -> u32 {
        if let Some(&i) = self.set_index.get(&set) {
            return i;
        }
        let i = self.sets.len() as u32;
        self.sets.push(set.clone());
        self.set_index.insert(set, i);
        i
    }

    /// Adds the nogood `∧ (var ∈ set)`. Repeated variables are merged by
    /// intersecting their sets.
    pub fn add_nogood(&mut self, lits: impl IntoIterator<Item = (usize, BitSet)>) {
        let mut merged: Vec<(usize, BitSet)> = Vec::new();
        for (v, s) in lits {
            match merged.iter_mut().find(|(u, _)| *u == v) {
                Some((_, t)) => t.intersect_with(&s),
                None => merged.push((v, s)),
            }
        }
        for (v, s) in merged.iter_mut() {
            s.intersect_with(&self.domains[*v]);
        }
        if merged.is_empty() {
            self.infeasible = true;
            return;
        }
        if merged.iter().any(|(_, s)| s.is_empty()) {
            return;
        }
        if merged.len() == 1 {
            let (v, s) = merged.pop().unwrap();
            self.domains[v].subtract(&s);
            if self.domains[v].is_empty() {
                self.infeasible = true;
            }
            return;
        }
        merged.sort_by_key(|(v, _)| *v);
        let lits: SmallVec<[Lit; 4]> = merged
            .into_iter()
            .map(|(v, s)| (v as u32, self.intern(s)))
            .collect();
        if !self.nogood_index.insert(lits.clone()) {
            return;
        }
        let id = self.nogoods.len() as u32;
        for &(v, _) in &lits {
            self.watches[v as usize].push(id);
        }
        self.nogoods.push(Nogood { lits });
    }

    /// Returns the first solution in the given order, values ascending.
    pub fn solve_first(
        &self,
        order: Option<&[usize]>,
        step_budget: u64,
    ) -> Result<Option<Vec<usize>>, StepBudgetHit> {
        let mut found = None;
        self.search(
            SearchOptions {
                order,
                project: None,
                step_budget,
            },
            |sol| {
                found = Some(sol.to_vec());
                false
            },
        )?;
        Ok(found)
    }

    /// Enumerates solutions, calling `f` on each; `f` returns `false` to stop.
    pub fn search<F>(&self, opts: SearchOptions<'_>, f: F) -> Result<SearchStats, StepBudgetHit>
    where
        F: FnMut(&[usize]) -> bool,
    {
        let default_order: Vec<usize>;
        let order = match opts.order {
            Some(o) => o,
            None => {
                default_order = (0..self.num_vars()).collect();
                &default_order
            }
        };
        if self.infeasible {
            return Ok(SearchStats::default());
        }
        let n = self.num_vars();
        let mut run = Run {
            domains: self.domains.clone(),
            trail: Vec::new(),
            queue: (0..n as u32).collect(),
            queued: vec![true; n],
            order,
            project: opts.project.unwrap_or(order.len()).min(order.len()),
            budget: opts.step_budget,
            stats: SearchStats::default(),
            on_solution: f,
        };
        if !self.propagate(&mut run) {
            return Ok(run.stats);
        }
        self.descend(&mut run, 0)?;
        Ok(run.stats)
    }

    fn propagate<F>(&self, run: &mut Run<'_, F>) -> bool {
        while let Some(v) = run.queue.pop_front() {
            run.queued[v as usize] = false;
            for &ng in &self.watches[v as usize] {
                let mut open: Option<Lit> = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &(u, s) in &self.nogoods[ng as usize].lits {
                    let d = &run.domains[u as usize];
                    let set = &self.sets[s as usize];
                    if !d.intersects(set) {
                        satisfied = true;
                        break;
                    }
                    if !d.is_subset(set) {
                        open_count += 1;
                        open = Some((u, s));
                        if open_count > 1 {
                            break;
                        }
                    }
                }
                if satisfied || open_count > 1 {
                    continue;
                }
                let Some((u, s)) = open else {
                    run.queue.clear();
                    run.queued.iter_mut().for_each(|q| *q = false);
                    return false;
                };
                let d = &mut run.domains[u as usize];
                run.trail.push((u, d.clone()));
                d.subtract(&self.sets[s as usize]);
                if d.is_empty() {
                    run.queue.clear();
                    run.queued.iter_mut().for_each(|q| *q = false);
                    return false;
                }
                if !run.queued[u as usize] {
                    run.queued[u as usize] = true;
                    run.queue.push_back(u);
                }
            }
        }
        true
    }

    fn undo<F>(run: &mut Run<'_, F>, mark: usize) {
        while run.trail.len() > mark {
            let (v, d) = run.trail.pop().unwrap();
            run.domains[v as usize] = d;
        }
    }

    fn descend<F>(&self, run: &mut Run<'_, F>, pos: usize) -> Result<Flow, StepBudgetHit>
    where
        F: FnMut(&[usize]) -> bool,
    {
        let mut idx = pos;
        while idx < run.order.len() && run.domains[run.order[idx]].count() == 1 {
            idx += 1;
        }
        if idx == run.order.len() {
            // Variables outside `order` must be fixed for a solution to be reported.
            if let Some(v) = (0..run.domains.len()).find(|&v| run.domains[v].count() != 1) {
                return self.branch_free(run, v);
            }
            run.stats.solutions += 1;
            let sol: Vec<usize> = run.domains.iter().map(|d| d.first().unwrap()).collect();
            let keep_going = (run.on_solution)(&sol);
            return Ok(if !keep_going {
                Flow::Stop
            } else if run.project < run.order.len() {
                Flow::TailDone
            } else {
                Flow::Continue
            });
        }
        let var = run.order[idx];
        let values: Vec<usize> = run.domains[var].iter().collect();
        let in_tail = idx >= run.project;
        for val in values {
            run.stats.steps += 1;
            if run.stats.steps > run.budget {
                return Err(StepBudgetHit {
                    steps: run.stats.steps,
                });
            }
            let mark = run.trail.len();
            let d = &mut run.domains[var];
            run.trail.push((var as u32, d.clone()));
            *d = BitSet::singleton(d.universe(), val);
            run.queue.push_back(var as u32);
            run.queued[var] = true;
            let ok = self.propagate(run);
            let flow = if ok {
                self.descend(run, idx + 1)?
            } else {
                Flow::Continue
            };
            Self::undo(run, mark);
            match flow {
                Flow::Continue => {}
                Flow::Stop => return Ok(Flow::Stop),
                Flow::TailDone if in_tail => return Ok(Flow::TailDone),
                Flow::TailDone => {}
            }
        }
        Ok(Flow::Continue)
    }

    fn branch_free<F>(&self, run: &mut Run<'_, F>, var: usize) -> Result<Flow, StepBudgetHit>
    where
        F: FnMut(&[usize]) -> bool,
    {
        let values: Vec<usize> = run.domains[var].iter().collect();
        for val in values {
            run.stats.steps += 1;
            if run.stats.steps > run.budget {
                return Err(StepBudgetHit {
                    steps: run.stats.steps,
                });
            }
            let mark = run.trail.len();
            let d = &mut run.domains[var];
            run.trail.push((var as u32, d.clone()));
            *d = BitSet::singleton(d.universe(), val);
            run.queue.push_back(var as u32);
            run.queued[var] = true;
            let flow = if self.propagate(run) {
                self.descend(run, run.order.len())?
            } else {
                Flow::Continue
            };
            Self::undo(run, mark);
            match flow {
                Flow::Continue => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Continue)
    }
}
