use std::collections::HashMap;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use super::certificate::{Certificate, CertificateRecord};
use super::direction::DirectionSet;
use super::{deep_illuminates, IlluminationChecker};
use crate::body::{canonical, SymmetricBody, SymmetryClass};
use crate::error::{Error, Result};
use crate::exact::{Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Covers,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexWitness {
    pub vertex: Vector,
    pub certificate: CertificateRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UncoveredVertex {
    pub vertex: Vector,
    /// One refutation per direction of the set, in set order.
    pub refutations: Vec<CertificateRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub body_id: String,
    pub set_id: String,
    pub verdict: Verdict,
    pub vertices: usize,
    pub witnesses: Vec<VertexWitness>,
    pub uncovered: Vec<UncoveredVertex>,
}

impl CoverReport {
    pub fn covers(&self) -> bool {
        self.verdict == Verdict::Covers
    }

    /// Re-validates every certificate in the report. Gauges are recomputed
    /// once per symmetry class of the evaluated point.
    pub fn validate(&self, body: &SymmetricBody) -> Result<bool> {
        let mut validator = Validator::new(body);
        for w in &self.witnesses {
            if w.certificate.vertex != w.vertex || !validator.check(&w.certificate)? {
                return Ok(false);
            }
            if !w.certificate.is_witness() {
                return Ok(false);
            }
        }
        for u in &self.uncovered {
            for r in &u.refutations {
                if r.is_witness() || r.vertex != u.vertex || !validator.check(r)? {
                    return Ok(false);
                }
            }
        }
        let consistent = (self.verdict == Verdict::Covers)
            == (self.uncovered.is_empty() && self.witnesses.len() == self.vertices);
        Ok(consistent)
    }
}

/// Independent certificate checks. Gauges come from the prefix-sum program
/// where the symmetry class allows it (a different algorithm from the one
/// that produced the certificate) and are cached by canonical point.
pub struct Validator<'a> {
    body: &'a SymmetricBody,
    gauges: HashMap<Vector, Scalar>,
}

impl<'a> Validator<'a> {
    pub fn new(body: &'a SymmetricBody) -> Self {
        Validator {
            body,
            gauges: HashMap::new(),
        }
    }

    fn gauge(&mut self, p: &Vector) -> Result<Scalar> {
        let key = match self.body.symmetry() {
            SymmetryClass::ExplicitGroup(_) => p.clone(),
            sym => canonical(p, sym),
        };
        if let Some(g) = self.gauges.get(&key) {
            return Ok(g.clone());
        }
        let g = match self.body.gauge_by_prefix_sums(&key)? {
            Some(g) => g,
            None => self.body.gauge(&key)?,
        };
        self.gauges.insert(key, g.clone());
        Ok(g)
    }

    pub fn check(&mut self, record: &CertificateRecord) -> Result<bool> {
        let x = &record.vertex;
        let d = &record.direction;
        if x.dim() != self.body.dim() || d.dim() != self.body.dim() {
            return Ok(false);
        }
        match record.to_certificate()? {
            Certificate::Witness {
                direction,
                step,
                interior_gauge,
            } => {
                if &direction != d || !step.is_positive() || interior_gauge >= Scalar::one() {
                    return Ok(false);
                }
                Ok(self.gauge(&x.add_scaled(&step, d))? == interior_gauge)
            }
            Certificate::Refutation {
                normal,
                inner_product,
            } => {
                if normal.is_zero() || inner_product.is_negative() || d.dot(&normal) != inner_product {
                    return Ok(false);
                }
                if self.gauge(x)? > Scalar::one() {
                    return Ok(false);
                }
                Ok(self.body.is_outer_normal(x, &normal))
            }
        }
    }
}

/// Checks every vertex against the directions of `set`, in set order.
/// Vertices are processed in sorted order, so the report is deterministic.
pub fn verify_set(body: &SymmetricBody, set: &DirectionSet) -> Result<CoverReport> {
    let checker = IlluminationChecker::new(body);
    verify_set_with(&checker, set, body_label(body))
}

pub(crate) fn verify_set_with(
    checker: &IlluminationChecker<'_>,
    set: &DirectionSet,
    body_id: String,
) -> Result<CoverReport> {
    let body = checker.body();
    if let Some(dim) = set.dim() {
        if dim != body.dim() {
            return Err(Error::DimensionMismatch(format!(
                "direction set in dimension {dim}, body in dimension {}",
                body.dim()
            )));
        }
    }
    let vertices = body.vertices()?;
    let outcomes: Vec<std::result::Result<VertexWitness, UncoveredVertex>> = vertices
        .par_iter()
        .map(|v| {
            let mut refutations = Vec::with_capacity(set.len());
            let (deep, rest): (Vec<_>, Vec<_>) =
                set.iter().enumerate().partition(|(_, d)| deep_illuminates(&d.vector, v));
            let mut witness = None;
            for (i, d) in deep.iter().chain(rest.iter()) {
                let cert = checker.check(v, &d.vector)?;
                if cert.is_witness() {
                    witness = Some(VertexWitness {
                        vertex: v.clone(),
                        certificate: cert.to_record(v, &d.vector),
                    });
                    break;
                }
                refutations.push((*i, cert.to_record(v, &d.vector)));
            }
            if let Some(w) = witness {
                return Ok(Ok(w));
            }
            refutations.sort_by_key(|(i, _)| *i);
            let refutations: Vec<CertificateRecord> = refutations.into_iter().map(|(_, r)| r).collect();
            Ok(Err(UncoveredVertex {
                vertex: v.clone(),
                refutations,
            }))
        })
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let mut uncovered = Vec::new();
    for o in outcomes {
        match o {
            Ok(w) => witnesses.push(w),
            Err(u) => uncovered.push(u),
        }
    }
    Ok(CoverReport {
        body_id,
        set_id: set.id.clone(),
        verdict: if uncovered.is_empty() {
            Verdict::Covers
        } else {
            Verdict::Fails
        },
        vertices: vertices.len(),
        witnesses,
        uncovered,
    })
}

pub(crate) fn body_label(body: &SymmetricBody) -> String {
    let gens: Vec<String> = body
        .representatives()
        .iter()
        .map(|g| g.to_strings().join(","))
        .collect();
    format!("{}[{}]", body.symmetry().name(), gens.join(" | "))
}

/// The vertices that `d` illuminates, in sorted order.
pub fn illuminated_vertices(body: &SymmetricBody, d: &Vector) -> Result<Vec<Vector>> {
    let checker = IlluminationChecker::new(body);
    let vertices = body.vertices()?;
    let flags = vertices
        .par_iter()
        .map(|v| checker.check(v, d).map(|c| c.is_witness()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(vertices
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(v, _)| v.clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCover {
    pub size: usize,
    /// One optimal subset, in pool order.
    pub subset: DirectionSet,
    pub vertices: usize,
    pub pool: usize,
    /// Lower bound at the root of the search.
    pub root_lower_bound: usize,
    /// Size of the greedy cover that seeded the search.
    pub greedy_size: usize,
    /// Branch-and-bound nodes visited; the search ran to exhaustion, so
    /// no subset of size `size - 1` exists.
    pub nodes_explored: u64,
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Exact minimum number of pool directions illuminating every vertex.
pub fn min_cover(body: &SymmetricBody, pool: &DirectionSet) -> Result<MinCover> {
    min_cover_with_budget(body, pool, DEFAULT_NODE_BUDGET)
}

pub fn min_cover_with_budget(body: &SymmetricBody, pool: &DirectionSet, budget: u64) -> Result<MinCover> {
    let vertices = body.vertices()?;
    if vertices.len() > 128 || pool.len() > 128 {
        return Err(Error::InvalidParameter(format!(
            "exact cover search supports at most 128 vertices and 128 directions (got {} and {})",
            vertices.len(),
            pool.len()
        )));
    }
    let checker = IlluminationChecker::new(body);
    let masks: Vec<u128> = pool
        .directions
        .par_iter()
        .map(|d| {
            let mut mask = 0u128;
            for (i, v) in vertices.iter().enumerate() {
                if checker.check(v, &d.vector)?.is_witness() {
                    mask |= 1 << i;
                }
            }
            Ok(mask)
        })
        .collect::<Result<_>>()?;
    let chosen = SetCover::new(vertices.len(), masks).solve(budget)?;
    let subset = DirectionSet {
        id: format!("min_cover({})", pool.id),
        directions: chosen.indices.iter().map(|&i| pool.directions[i].clone()).collect(),
    };
    Ok(MinCover {
        size: chosen.indices.len(),
        subset,
        vertices: vertices.len(),
        pool: pool.len(),
        root_lower_bound: chosen.root_lower_bound,
        greedy_size: chosen.greedy_size,
        nodes_explored: chosen.nodes,
    })
}

/// Exact unweighted set cover over at most 128 elements.
pub(crate) struct SetCover {
    universe: u128,
    masks: Vec<u128>,
    /// For each element, the sets covering it, as a bitmask over sets.
    covering: Vec<u128>,
}

pub(crate) struct CoverSolution {
    pub indices: Vec<usize>,
    pub root_lower_bound: usize,
    pub greedy_size: usize,
    pub nodes: u64,
}

impl SetCover {
    pub(crate) fn new(elements: usize, masks: Vec<u128>) -> Self {
        let universe = if elements == 128 { u128::MAX } else { (1u128 << elements) - 1 };
        let covering = (0..elements)
            .map(|e| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| *m >> e & 1 == 1)
                    .fold(0u128, |acc, (s, _)| acc | 1 << s)
            })
            .collect();
        SetCover {
            universe,
            masks,
            covering,
        }
    }

    fn elements(mask: u128) -> impl Iterator<Item = usize> {
        (0..128).filter(move |i| mask >> i & 1 == 1)
    }

    /// Elements needing pairwise distinct sets, or a counting bound.
    fn lower_bound(&self, uncovered: u128) -> usize {
        if uncovered == 0 {
            return 0;
        }
        let mut order: Vec<usize> = Self::elements(uncovered).collect();
        order.sort_by_key(|&e| (self.covering[e].count_ones(), e));
        let mut used = 0u128;
        let mut packing = 0;
        for e in order {
            if self.covering[e] & used == 0 {
                packing += 1;
                used |= self.covering[e];
            }
        }
        let widest = self
            .masks
            .iter()
            .map(|m| (m & uncovered).count_ones())
            .max()
            .unwrap_or(0) as usize;
        let count = uncovered.count_ones() as usize;
        packing.max(count.div_ceil(widest.max(1)))
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.universe;
        let mut picked = Vec::new();
        while uncovered != 0 {
            let (best, gain) = self
                .masks
                .iter()
                .enumerate()
                .map(|(i, m)| (i, (m & uncovered).count_ones()))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("feasibility checked");
            debug_assert!(gain > 0);
            picked.push(best);
            uncovered &= !self.masks[best];
        }
        picked.sort_unstable();
        picked
    }

    pub(crate) fn solve(&self, budget: u64) -> Result<CoverSolution> {
        if let Some(e) = Self::elements(self.universe).find(|&e| self.covering[e] == 0) {
            return Err(Error::InvalidParameter(format!(
                "no direction in the pool illuminates vertex number {}",
                e + 1
            )));
        }
        let greedy = self.greedy();
        let root_lower_bound = self.lower_bound(self.universe);
        let mut search = Search {
            cover: self,
            best: greedy.clone(),
            chosen: Vec::new(),
            nodes: 0,
            budget,
        };
        if root_lower_bound < greedy.len() && !search.run(self.universe) {
            return Err(Error::ResourceLimit {
                explored: search.nodes,
                lower: root_lower_bound,
                upper: search.best.len(),
            });
        }
        let mut indices = search.best;
        indices.sort_unstable();
        Ok(CoverSolution {
            indices,
            root_lower_bound,
            greedy_size: greedy.len(),
            nodes: search.nodes,
        })
    }
}

struct Search<'a> {
    cover: &'a SetCover,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Returns false when the node budget runs out.
    fn run(&mut self, uncovered: u128) -> bool {
        if uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return true;
        }
        if self.chosen.len() + self.cover.lower_bound(uncovered) >= self.best.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let pivot = SetCover::elements(uncovered)
            .min_by_key(|&e| (self.cover.covering[e].count_ones(), e))
            .expect("non-empty");
        for s in SetCover::elements(self.cover.covering[pivot]) {
            self.chosen.push(s);
            let ok = self.run(uncovered & !self.cover.masks[s]);
            self.chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all subsets, smallest first.
    fn brute(elements: usize, masks: &[u128]) -> usize {
        let universe = (1u128 << elements) - 1;
        (0..=masks.len())
            .find(|&k| {
                (0u64..1 << masks.len())
                    .filter(|s| s.count_ones() as usize == k)
                    .any(|s| {
                        (0..masks.len())
                            .filter(|i| s >> i & 1 == 1)
                            .fold(0u128, |acc, i| acc | masks[i])
                            == universe
                    })
            })
            .unwrap()
    }

    #[test]
    fn exact_cover_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let elements = rng.gen_range(1..10);
            let sets = rng.gen_range(1..11);
            let mut masks: Vec<u128> = (0..sets)
                .map(|_| rng.gen::<u128>() & ((1u128 << elements) - 1))
                .collect();
            // make it feasible
            masks.push(1);
            for e in 1..elements {
                if masks.iter().all(|m| m >> e & 1 == 0) {
                    masks.push(1 << e);
                }
            }
            let sol = SetCover::new(elements, masks.clone()).solve(1_000_000).unwrap();
            assert_eq!(sol.indices.len(), brute(elements, &masks));
            let union = sol.indices.iter().fold(0u128, |acc, &i| acc | masks[i]);
            assert_eq!(union, (1u128 << elements) - 1);
        }
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        // greedy takes the 4-element set first and needs 3; two rows suffice
        let masks = vec![0b000111, 0b111000, 0b011011];
        let sol = SetCover::new(6, masks.clone()).solve(100).unwrap();
        assert_eq!((sol.indices, sol.greedy_size), (vec![0, 1], 3));
        assert!(matches!(
            SetCover::new(6, masks).solve(0),
            Err(Error::ResourceLimit { explored: 1, lower: 2, upper: 3 })
        ));
    }
}
