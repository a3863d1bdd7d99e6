//! Convex polytopes given as the hull of generator orbits.
//!
//! A [`SymmetricBody`] is `conv(⋃ orbit(g))` over its generators. Support
//! values and column pricing never expand orbits for the coordinate
//! classes, so very large bodies (flagged `symbolic_only`) still answer
//! support, outer-normal and gauge queries. Gauges are exact linear
//! programs solved by column generation; [`SymmetricBody::gauge_full_lp`]
//! is the independent full-orbit formulation used as an oracle.

mod file;
mod orbit;
mod symmetry;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

pub use file::{BodyFile, SymmetryTag};
pub use orbit::{canonical, orbit_argmax, orbit_argmax_excluding, orbit_expand, orbit_size};
pub use symmetry::{SignedPermutation, SymmetryClass};

pub(crate) use orbit::canonicalize_with_map;

use crate::error::{Error, Result};
use crate::exact::{
    checked_div, int, lp_solve, solve_with_oracle, Column, ColumnOracle, LpProblem, LpStatus,
    Scalar, Vector, DEFAULT_MAX_ROUNDS,
};

/// Default bound on the number of orbit points a body may expand to.
pub const DEFAULT_ORBIT_CAP: u128 = 1_000_000;

#[derive(Debug)]
pub struct SymmetricBody {
    dim: usize,
    generators: Vec<Vector>,
    /// Distinct non-zero canonical representatives, sorted.
    reps: Vec<Vector>,
    symmetry: SymmetryClass,
    symbolic_only: bool,
    orbit_cap: u128,
    vertices: OnceLock<Vec<Vector>>,
    extreme: OnceLock<Vec<Vector>>,
    invariants: OnceLock<BodyInvariants>,
}

impl Clone for SymmetricBody {
    fn clone(&self) -> Self {
        SymmetricBody {
            dim: self.dim,
            generators: self.generators.clone(),
            reps: self.reps.clone(),
            symmetry: self.symmetry.clone(),
            symbolic_only: self.symbolic_only,
            orbit_cap: self.orbit_cap,
            vertices: self.vertices.clone(),
            extreme: self.extreme.clone(),
            invariants: self.invariants.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BodyInvariants {
    /// Largest `k` with `e_1 + ... + e_k` in the (normalized) body.
    pub m_b: usize,
    /// `||1||_B / ||e_1||_B`.
    pub dist_to_cube: Scalar,
    /// `1 / dist_to_cube`.
    pub theta: Scalar,
    /// `(1 - theta) / (n + 2)`.
    pub eta: Scalar,
}

/// Zero set, support and maximal-coordinate set of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignProfile {
    pub zero_set: Vec<usize>,
    pub support: Vec<usize>,
    pub max_set: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignProfile {
    pub fn of(x: &Vector) -> SignProfile {
        let signs: Vec<i8> = x.iter().map(crate::exact::sign).collect();
        let zero_set = (0..x.dim()).filter(|&i| signs[i] == 0).collect();
        let support = (0..x.dim()).filter(|&i| signs[i] != 0).collect();
        let max = x.linf_norm();
        let max_set = if max.is_zero() {
            Vec::new()
        } else {
            (0..x.dim()).filter(|&i| x[i].abs() == max).collect()
        };
        SignProfile {
            zero_set,
            support,
            max_set,
            signs,
        }
    }
}

impl SymmetricBody {
    pub fn new(dim: usize, generators: Vec<Vector>, symmetry: SymmetryClass) -> Result<Self> {
        Self::with_options(dim, generators, symmetry, false, DEFAULT_ORBIT_CAP)
    }

    pub fn one_symmetric(generators: Vec<Vector>) -> Result<Self> {
        let dim = generators.first().map(Vector::dim).unwrap_or(0);
        Self::new(dim, generators, SymmetryClass::OneSymmetric)
    }

    pub fn one_unconditional(generators: Vec<Vector>) -> Result<Self> {
        let dim = generators.first().map(Vector::dim).unwrap_or(0);
        Self::new(dim, generators, SymmetryClass::OneUnconditional)
    }

    /// Plain V-polytope `conv(points)` with no symmetry assumed.
    pub fn polytope(points: Vec<Vector>) -> Result<Self> {
        let dim = points.first().map(Vector::dim).unwrap_or(0);
        Self::new(dim, points, SymmetryClass::trivial(dim))
    }

    /// `symbolic_only` suppresses orbit expansion; it is also switched on
    /// automatically when the orbits exceed `orbit_cap`.
    pub fn with_options(
        dim: usize,
        generators: Vec<Vector>,
        symmetry: SymmetryClass,
        symbolic_only: bool,
        orbit_cap: u128,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DegenerateBody("dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::DegenerateBody("no generators".into()));
        }
        for g in &generators {
            g.check_dim(dim)?;
        }
        if let SymmetryClass::ExplicitGroup(group) = &symmetry {
            if group.iter().any(|s| s.dim() != dim) {
                return Err(Error::InvalidGroup("group acts on a different dimension".into()));
            }
        }
        let mut reps: Vec<Vector> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| canonical(g, &symmetry))
            .collect();
        reps.sort();
        reps.dedup();

        let total = reps
            .iter()
            .fold(0u128, |acc, g| acc.saturating_add(orbit_size(g, &symmetry)));
        let body = SymmetricBody {
            dim,
            generators,
            reps,
            symbolic_only: symbolic_only || total > orbit_cap,
            symmetry,
            orbit_cap,
            vertices: OnceLock::new(),
            extreme: OnceLock::new(),
            invariants: OnceLock::new(),
        };
        body.check_full_dimensional()?;
        Ok(body)
    }

    fn check_full_dimensional(&self) -> Result<()> {
        match &self.symmetry {
            SymmetryClass::OneSymmetric => {
                if self.reps.is_empty() {
                    return Err(Error::DegenerateBody("all generators are zero".into()));
                }
            }
            SymmetryClass::OneUnconditional => {
                if let Some(i) = (0..self.dim).find(|&i| self.reps.iter().all(|g| g[i].is_zero())) {
                    return Err(Error::DegenerateBody(format!(
                        "no generator has a non-zero coordinate {}",
                        i + 1
                    )));
                }
            }
            SymmetryClass::ExplicitGroup(_) => {
                // 0 is interior iff every ±e_i is a non-negative combination
                // of the points.
                let points = self.orbit_points()?;
                for i in 0..self.dim {
                    for s in [1, -1] {
                        let target = Vector::unit(self.dim, i).scale(&int(s));
                        let problem = LpProblem::new(
                            vec![Scalar::zero(); points.len()],
                            (0..self.dim)
                                .map(|r| points.iter().map(|p| p[r].clone()).collect())
                                .collect(),
                            target.into_coords(),
                        );
                        if lp_solve(&problem)?.status != LpStatus::Optimal {
                            return Err(Error::DegenerateBody(
                                "the origin is not an interior point".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    pub fn symmetry(&self) -> &SymmetryClass {
        &self.symmetry
    }

    pub fn symbolic_only(&self) -> bool {
        self.symbolic_only
    }

    pub fn orbit_cap(&self) -> u128 {
        self.orbit_cap
    }

    /// Number of points in the union of generator orbits.
    pub fn orbit_point_count(&self) -> u128 {
        self.reps
            .iter()
            .fold(0u128, |acc, g| acc.saturating_add(orbit_size(g, &self.symmetry)))
    }

    /// All orbit points (sorted, de-duplicated).
    pub fn orbit_points(&self) -> Result<Vec<Vector>> {
        if self.symbolic_only {
            return Err(Error::OrbitTooLarge {
                size: self.orbit_point_count(),
                cap: self.orbit_cap,
            });
        }
        let mut all = Vec::new();
        for g in &self.reps {
            all.extend(orbit_expand(g, &self.symmetry, self.orbit_cap)?);
        }
        all.sort();
        all.dedup();
        Ok(all)
    }

    /// `h_B(u) = max <v, u>` over the body.
    pub fn support_value(&self, u: &Vector) -> Scalar {
        self.support_argmax(u, None).map(|(_, v)| v).unwrap_or_else(Scalar::zero)
    }

    /// A maximizing orbit point for `<., u>`, optionally excluding one point.
    pub fn support_argmax(&self, u: &Vector, excluded: Option<&Vector>) -> Option<(Vector, Scalar)> {
        assert_eq!(u.dim(), self.dim, "support direction has the wrong dimension");
        self.reps
            .iter()
            .filter_map(|g| match excluded {
                Some(x) => orbit_argmax_excluding(g, &self.symmetry, u, x),
                None => Some(orbit_argmax(g, &self.symmetry, u)),
            })
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
    }

    /// Minkowski gauge `inf { t > 0 : p ∈ tB }`.
    pub fn gauge(&self, p: &Vector) -> Result<Scalar> {
        Ok(self.gauge_with_normal(p)?.0)
    }

    /// The gauge together with a dual certificate `y`: `h_B(y) <= 1` and
    /// `<p, y> = gauge(p)`.
    pub fn gauge_with_normal(&self, p: &Vector) -> Result<(Scalar, Vector)> {
        p.check_dim(self.dim)?;
        if p.is_zero() {
            return Ok((Scalar::zero(), Vector::zeros(self.dim)));
        }
        let base = LpProblem::new(
            Vec::new(),
            vec![Vec::new(); self.dim],
            p.coords().to_vec(),
        );
        let mut oracle = self.column_oracle(Vec::new(), Scalar::one(), None);
        let solution = solve_with_oracle(&base, Vec::new(), &mut oracle, DEFAULT_MAX_ROUNDS)?;
        match solution.status {
            LpStatus::Optimal => Ok((solution.objective, Vector::new(solution.dual))),
            _ => Err(Error::DegenerateBody(
                "gauge program infeasible; generators do not span".into(),
            )),
        }
    }

    /// Gauge from one LP over every orbit point. Independent of the pricing
    /// machinery; requires orbit expansion.
    pub fn gauge_full_lp(&self, p: &Vector) -> Result<Scalar> {
        p.check_dim(self.dim)?;
        let points = self.orbit_points()?;
        let problem = LpProblem::new(
            vec![Scalar::one(); points.len()],
            (0..self.dim)
                .map(|r| points.iter().map(|v| v[r].clone()).collect())
                .collect(),
            p.coords().to_vec(),
        );
        let solution = lp_solve(&problem)?;
        match solution.status {
            LpStatus::Optimal => Ok(solution.objective),
            _ => Err(Error::DegenerateBody("gauge program infeasible".into())),
        }
    }

    /// Gauge from the hull of the orbit polytopes, without orbit points or
    /// column generation: for the coordinate symmetry classes,
    /// `p ∈ t B` iff the prefix sums of `|p|` sorted decreasingly are
    /// dominated by those of `Σ λ_j g_j` with `Σ λ_j = t` (for
    /// `OneUnconditional`, coordinatewise `|p| <= Σ λ_j g_j`). One small
    /// LP with a variable per representative. `None` for explicit groups.
    pub fn gauge_by_prefix_sums(&self, p: &Vector) -> Result<Option<Scalar>> {
        p.check_dim(self.dim)?;
        let prefix = |v: &[Scalar]| -> Vec<Scalar> {
            let mut acc = Scalar::zero();
            v.iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect()
        };
        let (target, columns): (Vec<Scalar>, Vec<Vec<Scalar>>) = match &self.symmetry {
            SymmetryClass::OneSymmetric => (
                prefix(canonical(p, &self.symmetry).coords()),
                self.reps.iter().map(|g| prefix(g.coords())).collect(),
            ),
            SymmetryClass::OneUnconditional => (
                p.abs().into_coords(),
                self.reps.iter().map(|g| g.coords().to_vec()).collect(),
            ),
            SymmetryClass::ExplicitGroup(_) => return Ok(None),
        };
        if p.is_zero() {
            return Ok(Some(Scalar::zero()));
        }
        let n = self.dim;
        let j = columns.len();
        // variables: λ_1..λ_J, then one surplus per row
        let mut objective = vec![Scalar::one(); j];
        objective.extend(vec![Scalar::zero(); n]);
        let rows = (0..n)
            .map(|k| {
                let mut row: Vec<Scalar> = columns.iter().map(|c| c[k].clone()).collect();
                row.extend((0..n).map(|i| if i == k { -Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        let solution = lp_solve(&LpProblem::new(objective, rows, target))?;
        match solution.status {
            LpStatus::Optimal => Ok(Some(solution.objective)),
            _ => Err(Error::DegenerateBody("prefix-sum gauge program infeasible".into())),
        }
    }

    /// Shortcut: `p` lies in the box spanned by some orbit point
    /// (strictly, for `strict`). Never contradicts the gauge.
    fn dominated_by_generator(&self, p: &Vector, strict: bool) -> bool {
        let holds = |x: &Scalar, y: &Scalar| {
            if strict {
                x < y || (x.is_zero() && y.is_zero())
            } else {
                x <= y
            }
        };
        match &self.symmetry {
            SymmetryClass::OneSymmetric => {
                let cp = canonical(p, &self.symmetry);
                self.reps
                    .iter()
                    .any(|g| cp.iter().zip(g.iter()).all(|(x, y)| holds(x, y)))
            }
            SymmetryClass::OneUnconditional => {
                let ap = p.abs();
                self.reps
                    .iter()
                    .any(|g| ap.iter().zip(g.iter()).all(|(x, y)| holds(x, y)))
            }
            SymmetryClass::ExplicitGroup(_) => false,
        }
    }

    pub fn is_member(&self, p: &Vector) -> Result<bool> {
        p.check_dim(self.dim)?;
        if self.dominated_by_generator(p, false) {
            return Ok(true);
        }
        Ok(self.gauge(p)? <= Scalar::one())
    }

    pub fn is_interior(&self, p: &Vector) -> Result<bool> {
        p.check_dim(self.dim)?;
        if self.dominated_by_generator(p, true) {
            return Ok(true);
        }
        Ok(self.gauge(p)? < Scalar::one())
    }

    /// `support_value(u) == <x, u>`; valid for `x` in the body.
    pub fn is_outer_normal(&self, x: &Vector, u: &Vector) -> bool {
        self.support_value(u) == x.dot(u)
    }

    /// Representatives whose orbits consist of vertices.
    pub fn extreme_representatives(&self) -> Result<&[Vector]> {
        if let Some(e) = self.extreme.get() {
            return Ok(e);
        }
        let mut extreme = Vec::new();
        for g in &self.reps {
            if self.is_extreme_point(g)? {
                extreme.push(g.clone());
            }
        }
        Ok(self.extreme.get_or_init(|| extreme))
    }

    /// Whether the orbit point `g` is not a convex combination of the other
    /// orbit points. One exact LP, priced over the orbits with `g` removed.
    pub fn is_extreme_point(&self, g: &Vector) -> Result<bool> {
        g.check_dim(self.dim)?;
        let mut rhs = g.coords().to_vec();
        rhs.push(Scalar::one());
        let base = LpProblem::new(Vec::new(), vec![Vec::new(); self.dim + 1], rhs);
        let mut oracle = self.column_oracle(vec![Scalar::one()], Scalar::zero(), Some(g.clone()));
        let solution = solve_with_oracle(&base, Vec::new(), &mut oracle, DEFAULT_MAX_ROUNDS)?;
        Ok(solution.status == LpStatus::Infeasible)
    }

    /// The vertex set, sorted. Each orbit is tested once: the body's
    /// symmetry maps vertices to vertices.
    pub fn vertices(&self) -> Result<&[Vector]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        if self.symbolic_only {
            return Err(Error::OrbitTooLarge {
                size: self.orbit_point_count(),
                cap: self.orbit_cap,
            });
        }
        let mut all = Vec::new();
        match &self.symmetry {
            SymmetryClass::ExplicitGroup(_) => {
                for p in self.orbit_points()? {
                    if self.is_extreme_point(&p)? {
                        all.push(p);
                    }
                }
            }
            _ => {
                for g in self.extreme_representatives()? {
                    all.extend(orbit_expand(g, &self.symmetry, self.orbit_cap)?);
                }
            }
        }
        all.sort();
        all.dedup();
        Ok(self.vertices.get_or_init(|| all))
    }

    /// Rescales so that `gauge(e_i) = 1` for every `i`: one factor for
    /// 1-symmetric bodies, one per axis for 1-unconditional ones.
    pub fn normalize_to_sn(&self) -> Result<SymmetricBody> {
        let scales: Vec<Scalar> = match &self.symmetry {
            SymmetryClass::OneSymmetric => {
                let s = self.gauge(&Vector::unit(self.dim, 0))?;
                vec![s; self.dim]
            }
            SymmetryClass::OneUnconditional => (0..self.dim)
                .map(|i| self.gauge(&Vector::unit(self.dim, i)))
                .collect::<Result<_>>()?,
            SymmetryClass::ExplicitGroup(_) => {
                return Err(Error::InvalidParameter(
                    "normalization needs a 1-symmetric or 1-unconditional body".into(),
                ))
            }
        };
        if scales.iter().all(One::is_one) {
            return Ok(self.clone());
        }
        let generators = self
            .generators
            .iter()
            .map(|g| Vector::new(g.iter().zip(&scales).map(|(c, s)| c * s).collect()))
            .collect();
        SymmetricBody::with_options(
            self.dim,
            generators,
            self.symmetry.clone(),
            self.symbolic_only,
            self.orbit_cap,
        )
    }

    pub fn is_normalized(&self) -> Result<bool> {
        for i in 0..self.dim {
            if !self.gauge(&Vector::unit(self.dim, i))?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn invariants(&self) -> Result<&BodyInvariants> {
        if let Some(inv) = self.invariants.get() {
            return Ok(inv);
        }
        let n = self.dim;
        let unit = self.gauge(&Vector::unit(n, 0))?;
        let mut m_b = 1;
        for k in 2..=n {
            if self.gauge(&Vector::prefix_ones(n, k))? <= unit {
                m_b = k;
            } else {
                break;
            }
        }
        let dist = checked_div(&self.gauge(&Vector::ones(n))?, &unit)?;
        let theta = checked_div(&Scalar::one(), &dist)?;
        let eta = (Scalar::one() - &theta) / int(n as i64 + 2);
        let inv = BodyInvariants {
            m_b,
            dist_to_cube: dist,
            theta,
            eta,
        };
        Ok(self.invariants.get_or_init(|| inv))
    }

    /// `max gauge(σ v)` over vertices `v` and all signed permutations `σ`.
    /// `K` is α-symmetric exactly when this is at most α.
    pub fn symmetry_defect(&self) -> Result<Scalar> {
        let group = hyperoctahedral_group(self.dim)?;
        let mut worst = Scalar::zero();
        for v in self.vertices()? {
            for s in &group {
                let g = self.gauge(&s.apply(v))?;
                if g > worst {
                    worst = g;
                }
            }
        }
        Ok(worst)
    }

    pub fn is_alpha_symmetric(&self, alpha: &Scalar) -> Result<bool> {
        if alpha < &Scalar::one() {
            return Err(Error::InvalidParameter("alpha must be at least 1".into()));
        }
        Ok(&self.symmetry_defect()? <= alpha)
    }

    /// Gauge of the symmetrization `⋂_σ σ(K)`: `max_σ gauge_K(σ x)`.
    pub fn symmetrized_gauge(&self, x: &Vector) -> Result<Scalar> {
        x.check_dim(self.dim)?;
        if x.is_zero() {
            return Ok(Scalar::zero());
        }
        let group = hyperoctahedral_group(self.dim)?;
        let mut worst = Scalar::zero();
        for s in &group {
            let g = self.gauge(&s.apply(x))?;
            if g > worst {
                worst = g;
            }
        }
        Ok(worst)
    }

    /// Pricing over the orbit union for columns `(v, tail...)` of cost
    /// `cost`, optionally skipping one point.
    pub(crate) fn column_oracle(
        &self,
        tail: Vec<Scalar>,
        cost: Scalar,
        excluded: Option<Vector>,
    ) -> OrbitOracle<'_> {
        OrbitOracle {
            body: self,
            tail,
            cost,
            excluded,
        }
    }
}

/// Largest dimension for which the full hyperoctahedral group is enumerated.
pub const MAX_GROUP_DIM: usize = 6;

fn hyperoctahedral_group(n: usize) -> Result<Vec<SignedPermutation>> {
    if n > MAX_GROUP_DIM {
        return Err(Error::InvalidParameter(format!(
            "the signed permutation group in dimension {n} is too large (cap {MAX_GROUP_DIM})"
        )));
    }
    Ok(SignedPermutation::all(n))
}

pub(crate) struct OrbitOracle<'a> {
    body: &'a SymmetricBody,
    tail: Vec<Scalar>,
    cost: Scalar,
    excluded: Option<Vector>,
}

impl ColumnOracle for OrbitOracle<'_> {
    fn best_column(&mut self, dual: &[Scalar], _farkas: bool) -> Option<Column> {
        let n = self.body.dim;
        let u = Vector::new(dual[..n].to_vec());
        let (v, _) = self.body.support_argmax(&u, self.excluded.as_ref())?;
        let mut entries = v.into_coords();
        entries.extend(self.tail.iter().cloned());
        Some(Column {
            entries,
            cost: self.cost.clone(),
        })
    }
}
