//! Backtracking search over finite variable assignments.
//!
//! Every exhaustive enumeration in the crate (functors, monoidal coherence
//! data, natural transformations, nullhomotopies) is phrased as a list of
//! variables whose candidate values may depend on earlier assignments, plus
//! checks bucketed by the last variable they read. Solutions come out in
//! lexicographic order of the assignment vector regardless of parallelism.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::par;

/// Default cap on candidate extensions per enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Frontier size at which the search stops expanding breadth-first and
/// hands prefixes to worker threads.
const SPLIT_WIDTH: usize = 64;

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before + n > self.limit {
            Err(Error::Budget { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

type Domain<'a> = Box<dyn Fn(usize, &[usize]) -> Vec<usize> + Send + Sync + 'a>;
type Check<'a> = Box<dyn Fn(&[usize]) -> bool + Send + Sync + 'a>;

pub(crate) struct Problem<'a> {
    vars: usize,
    domain: Domain<'a>,
    checks: Vec<Vec<Check<'a>>>,
}

impl<'a> Problem<'a> {
    pub fn new<D>(vars: usize, domain: D) -> Self
    where
        D: Fn(usize, &[usize]) -> Vec<usize> + Send + Sync + 'a,
    {
        Problem {
            vars,
            domain: Box::new(domain),
            checks: (0..vars).map(|_| Vec::new()).collect(),
        }
    }

    /// Registers a check that runs once variable `last` has been assigned.
    /// The check may read any variable with index `<= last`.
    pub fn check<C>(&mut self, last: usize, check: C)
    where
        C: Fn(&[usize]) -> bool + Send + Sync + 'a,
    {
        self.checks[last].push(Box::new(check));
    }

    fn accepts(&self, assignment: &[usize]) -> bool {
        let var = assignment.len() - 1;
        self.checks[var].iter().all(|c| c(assignment))
    }

    fn extend(&self, prefix: &[usize], budget: &Budget) -> Result<Vec<Vec<usize>>> {
        let var = prefix.len();
        let candidates = (self.domain)(var, prefix);
        budget.charge(candidates.len() as u64)?;
        let mut out = Vec::new();
        let mut next = prefix.to_vec();
        for value in candidates {
            next.push(value);
            if self.accepts(&next) {
                out.push(next.clone());
            }
            next.pop();
        }
        Ok(out)
    }

    fn dfs(
        &self,
        assignment: &mut Vec<usize>,
        budget: &Budget,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if assignment.len() == self.vars {
            out.push(assignment.clone());
            return Ok(());
        }
        let var = assignment.len();
        let candidates = (self.domain)(var, assignment);
        budget.charge(candidates.len() as u64)?;
        for value in candidates {
            assignment.push(value);
            if self.accepts(assignment) {
                self.dfs(assignment, budget, out)?;
            }
            assignment.pop();
        }
        Ok(())
    }

    pub fn solve(&self, budget: &Budget) -> Result<Vec<Vec<usize>>> {
        let mut frontier = vec![Vec::new()];
        let mut depth = 0;
        while depth < self.vars && !frontier.is_empty() && frontier.len() < SPLIT_WIDTH {
            let mut next = Vec::new();
            for prefix in &frontier {
                next.extend(self.extend(prefix, budget)?);
            }
            frontier = next;
            depth += 1;
        }
        par::try_flat_map(&frontier, |prefix| {
            let mut assignment = prefix.clone();
            let mut out = Vec::new();
            self.dfs(&mut assignment, budget, &mut out)?;
            Ok(out)
        })
    }
}
