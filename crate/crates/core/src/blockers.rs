//! Candidate blockers and blocker assignments.
//!
//! For an invisible pair `(i, j)` at most two vertices can serve as its
//! blocker: the first vertex `i` sees when walking clockwise from `j`, and
//! the first one it sees walking counterclockwise from `j`. Each is kept only
//! if no visible pair straddles it between `i` and `j` on its side.

use crate::graph::{step, walk, Dir, Pair, VisGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockerError {
    #[error("{0} is not an invisible pair")]
    NotInvisible(Pair),
}

/// Which side of an ordered pair `(i, j)` a blocker sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// In `∂(i, j)`; found walking clockwise from `j`.
    Cw,
    /// In `∂(j, i)`; found walking counterclockwise from `j`.
    Ccw,
}

impl Side {
    /// Direction of the walk from `i` through the blocker to `j`.
    pub fn toward(self) -> Dir {
        match self {
            Side::Cw => Dir::Ccw,
            Side::Ccw => Dir::Cw,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Cw => Side::Ccw,
            Side::Ccw => Side::Cw,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub cw_side: Option<usize>,
    pub ccw_side: Option<usize>,
}

impl CandidateSet {
    pub fn contains(&self, v: usize) -> bool {
        self.cw_side == Some(v) || self.ccw_side == Some(v)
    }

    pub fn side_of(&self, v: usize) -> Option<Side> {
        if self.cw_side == Some(v) {
            Some(Side::Cw)
        } else if self.ccw_side == Some(v) {
            Some(Side::Ccw)
        } else {
            None
        }
    }

    /// Candidates in value order: clockwise side first.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.cw_side.into_iter().chain(self.ccw_side)
    }

    pub fn len(&self) -> usize {
        self.cw_side.is_some() as usize + self.ccw_side.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The candidate on one side of `pair`, if it survives the straddle test.
fn side_candidate(g: &VisGraph, pair: Pair, side: Side) -> Option<usize> {
    let n = g.n();
    let (i, j) = (pair.from, pair.to);
    let fwd = side.toward();
    let back = fwd.reverse();
    let k = walk(n, step(n, j, back), step(n, i, fwd), back).find(|&v| g.visible(i, v))?;
    let before = walk(n, i, step(n, k, back), fwd).collect::<Vec<_>>();
    let straddled =
        walk(n, step(n, k, fwd), j, fwd).any(|t| before.iter().any(|&s| g.visible(s, t)));
    (!straddled).then_some(k)
}

pub fn candidate_blockers(g: &VisGraph, pair: Pair) -> Result<CandidateSet, BlockerError> {
    if !g.is_invisible(pair) {
        return Err(BlockerError::NotInvisible(pair));
    }
    Ok(CandidateSet {
        cw_side: side_candidate(g, pair, Side::Cw),
        ccw_side: side_candidate(g, pair, Side::Ccw),
    })
}

/// Candidate sets of every ordered invisible pair of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTable {
    n: usize,
    pairs: Vec<Pair>,
    cells: Vec<Option<CandidateSet>>,
}

impl CandidateTable {
    pub fn get(&self, pair: Pair) -> Option<&CandidateSet> {
        if pair.from >= self.n || pair.to >= self.n {
            return None;
        }
        self.cells[pair.from * self.n + pair.to].as_ref()
    }

    /// Invisible pairs in lexicographic order.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, &CandidateSet)> + '_ {
        self.pairs.iter().map(move |&p| (p, self.get(p).unwrap()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs no vertex can block; any such pair rules out every assignment.
    pub fn empty_pairs(&self) -> Vec<Pair> {
        self.iter()
            .filter(|(_, c)| c.is_empty())
            .map(|(p, _)| p)
            .collect()
    }

    pub fn is_candidate(&self, pair: Pair, v: usize) -> bool {
        self.get(pair).is_some_and(|c| c.contains(v))
    }

    pub fn to_map(&self) -> BTreeMap<Pair, CandidateSet> {
        self.iter().map(|(p, c)| (p, *c)).collect()
    }
}

pub fn all_candidates(g: &VisGraph) -> CandidateTable {
    let n = g.n();
    let pairs = g.invisible_pairs();
    let mut cells = vec![None; n * n];
    for &p in &pairs {
        cells[p.from * n + p.to] = Some(candidate_blockers(g, p).expect("pair is invisible"));
    }
    CandidateTable { n, pairs, cells }
}

/// Map from ordered invisible pairs to their assigned blocker. May be partial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockerAssignment {
    entries: BTreeMap<Pair, usize>,
}

impl BlockerAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pair: Pair, blocker: usize) -> Option<usize> {
        self.entries.insert(pair, blocker)
    }

    pub fn get(&self, pair: Pair) -> Option<usize> {
        self.entries.get(&pair).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by `(from, to)`.
    pub fn iter(&self) -> impl Iterator<Item = (Pair, usize)> + '_ {
        self.entries.iter().map(|(&p, &k)| (p, k))
    }

    pub fn to_file(&self) -> AssignmentFile {
        AssignmentFile {
            blockers: self
                .iter()
                .map(|(p, k)| BlockerEntry {
                    from: p.from,
                    to: p.to,
                    blocker: k,
                })
                .collect(),
        }
    }
}

impl FromIterator<(Pair, usize)> for BlockerAssignment {
    fn from_iter<I: IntoIterator<Item = (Pair, usize)>>(iter: I) -> Self {
        BlockerAssignment {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockerEntry {
    pub from: usize,
    pub to: usize,
    pub blocker: usize,
}

/// On-disk assignment format, sorted by `(from, to)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub blockers: Vec<BlockerEntry>,
}

impl AssignmentFile {
    /// Later duplicates of the same pair overwrite earlier ones.
    pub fn to_assignment(&self) -> BlockerAssignment {
        self.blockers
            .iter()
            .map(|e| (Pair::new(e.from, e.to), e.blocker))
            .collect()
    }
}
