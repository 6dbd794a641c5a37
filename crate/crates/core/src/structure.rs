//! Monotone binary structure functions.
//!
//! A [`StructureFunction`] maps a vector of component states to the system
//! state. Three interchangeable backends are supported: a monotone formula
//! (no negation, so monotone by construction), an explicit truth table, and
//! a minimal path family. All exhaustive algorithms (truth tables, path/cut
//! enumeration, coherence checks) are guarded by a configurable enumeration
//! cap, [`DEFAULT_ENUM_CAP`] components by default.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Float;

use crate::error::{Error, Result};

/// Exhaustive 2^n algorithms reject structures with more components than this
/// unless the cap is raised with [`StructureFunction::set_enumeration_cap`].
pub const DEFAULT_ENUM_CAP: usize = 24;

/// 1-based component index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(usize);

impl ComponentId {
    pub fn new(index: usize) -> Self {
        ComponentId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }
}

impl From<usize> for ComponentId {
    fn from(index: usize) -> Self {
        ComponentId(index)
    }
}

impl std::fmt::Display for ComponentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary vector of component states (`false` = failed, `true` = functioning).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector(Vec<bool>);

impl StateVector {
    pub fn new(states: Vec<bool>) -> Self {
        StateVector(states)
    }

    /// Build from 0/1 integers; any nonzero value counts as functioning.
    pub fn from_ints(states: &[u8]) -> Self {
        StateVector(states.iter().map(|&s| s != 0).collect())
    }

    /// Build from a bit mask where bit `i-1` is the state of component `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        StateVector((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, component: ComponentId) -> Option<bool> {
        self.0.get(component.index().wrapping_sub(1)).copied()
    }

    pub fn states(&self) -> &[bool] {
        &self.0
    }

    /// Mask with bit `i-1` set iff component `i` functions.
    pub fn mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &s)| if s { m | 1 << i } else { m })
    }
}

impl FromIterator<bool> for StateVector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        StateVector(iter.into_iter().collect())
    }
}

/// Monotone construction syntax for structure functions (no negation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureFormula {
    Atom(ComponentId),
    And(Vec<StructureFormula>),
    Or(Vec<StructureFormula>),
    KOutOfN {
        k: usize,
        children: Vec<StructureFormula>,
    },
}

impl StructureFormula {
    pub fn atom(index: usize) -> Self {
        StructureFormula::Atom(ComponentId::new(index))
    }

    pub fn and(children: Vec<StructureFormula>) -> Self {
        StructureFormula::And(children)
    }

    pub fn or(children: Vec<StructureFormula>) -> Self {
        StructureFormula::Or(children)
    }

    pub fn k_out_of_n(k: usize, children: Vec<StructureFormula>) -> Result<Self> {
        if k < 1 || k > children.len() {
            return Err(Error::InvalidKOutOfN {
                k,
                children: children.len(),
            });
        }
        Ok(StructureFormula::KOutOfN { k, children })
    }

    fn eval(&self, mask: u64) -> bool {
        match self {
            StructureFormula::Atom(c) => mask & c.bit() != 0,
            StructureFormula::And(children) => children.iter().all(|c| c.eval(mask)),
            StructureFormula::Or(children) => children.iter().any(|c| c.eval(mask)),
            StructureFormula::KOutOfN { k, children } => {
                children.iter().filter(|c| c.eval(mask)).count() >= *k
            }
        }
    }

    fn max_atom(&self) -> usize {
        match self {
            StructureFormula::Atom(c) => c.index(),
            StructureFormula::And(children)
            | StructureFormula::Or(children)
            | StructureFormula::KOutOfN { children, .. } => {
                children.iter().map(|c| c.max_atom()).max().unwrap_or(0)
            }
        }
    }

    fn min_atom(&self) -> usize {
        match self {
            StructureFormula::Atom(c) => c.index(),
            StructureFormula::And(children)
            | StructureFormula::Or(children)
            | StructureFormula::KOutOfN { children, .. } => children
                .iter()
                .map(|c| c.min_atom())
                .min()
                .unwrap_or(usize::MAX),
        }
    }

    /// De Morgan dual: swaps And/Or; k-out-of-m becomes (m-k+1)-out-of-m.
    fn dual(&self) -> Self {
        match self {
            StructureFormula::Atom(c) => StructureFormula::Atom(*c),
            StructureFormula::And(children) => {
                StructureFormula::Or(children.iter().map(|c| c.dual()).collect())
            }
            StructureFormula::Or(children) => {
                StructureFormula::And(children.iter().map(|c| c.dual()).collect())
            }
            StructureFormula::KOutOfN { k, children } => StructureFormula::KOutOfN {
                k: children.len() - k + 1,
                children: children.iter().map(|c| c.dual()).collect(),
            },
        }
    }

    fn substitute(&self, f: &impl Fn(usize) -> StructureFormula) -> Self {
        match self {
            StructureFormula::Atom(c) => f(c.index()),
            StructureFormula::And(children) => {
                StructureFormula::And(children.iter().map(|c| c.substitute(f)).collect())
            }
            StructureFormula::Or(children) => {
                StructureFormula::Or(children.iter().map(|c| c.substitute(f)).collect())
            }
            StructureFormula::KOutOfN { k, children } => StructureFormula::KOutOfN {
                k: *k,
                children: children.iter().map(|c| c.substitute(f)).collect(),
            },
        }
    }
}

#[derive(Debug, Clone)]
struct TruthTable {
    bits: Vec<u64>,
}

impl TruthTable {
    fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Self {
        let size = 1usize << n;
        let mut bits = vec![0u64; size.div_ceil(64)];
        for mask in 0..size as u64 {
            if f(mask) {
                bits[(mask / 64) as usize] |= 1 << (mask % 64);
            }
        }
        TruthTable { bits }
    }

    fn get(&self, mask: u64) -> bool {
        self.bits[(mask / 64) as usize] >> (mask % 64) & 1 == 1
    }
}

/// A family of component subsets, canonically ordered by size then
/// lexicographically by members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for set in &sets {
            let mut mask = 0u64;
            for &i in set {
                if i < 1 || i > n {
                    return Err(Error::InvalidComponent { index: i, n });
                }
                mask |= 1 << (i - 1);
            }
            masks.push(mask);
        }
        Ok(SetFamily::from_masks(n, masks))
    }

    pub(crate) fn from_masks(n: usize, mut masks: Vec<u64>) -> Self {
        masks.sort_by_key(|&m| members(m));
        masks.sort_by_key(|&m| m.count_ones());
        masks.dedup();
        SetFamily { n, sets: masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sets as sorted 1-based member lists, in canonical order.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| members(m)).collect()
    }

    pub(crate) fn masks(&self) -> &[u64] {
        &self.sets
    }

    pub fn is_antichain(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, &a)| {
            self.sets
                .iter()
                .enumerate()
                .all(|(j, &b)| i == j || (a & b != a && a & b != b))
        })
    }

    /// Drop every set that contains another member of the family.
    pub fn antichain_reduce(&self) -> SetFamily {
        let minimal: Vec<u64> = self
            .sets
            .iter()
            .copied()
            .filter(|&a| !self.sets.iter().any(|&b| b != a && a & b == b))
            .collect();
        SetFamily::from_masks(self.n, minimal)
    }
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// The unique multilinear (idempotent-reduced) polynomial representation of a
/// structure: `phi(x) = sum over T of b_T * prod_{j in T} x_j` with integer
/// coefficients. Evaluated at real arguments it is the reliability function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleForm {
    n: usize,
    terms: BTreeMap<u64, i64>,
}

impl SimpleForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial over `set` (1-based members), 0 if absent.
    pub fn coefficient(&self, set: &[usize]) -> i64 {
        let mask = set.iter().fold(0u64, |m, &i| m | 1 << (i - 1));
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    /// Terms as (sorted member list, coefficient) pairs.
    pub fn terms(&self) -> Vec<(Vec<usize>, i64)> {
        self.terms.iter().map(|(&m, &c)| (members(m), c)).collect()
    }

    pub(crate) fn term_masks(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Evaluate at a real argument vector; at binary arguments this equals
    /// the structure function, in `[0,1]^n` it equals the reliability `h(p)`.
    pub fn evaluate<T: Float>(&self, p: &[T]) -> T {
        let mut acc = T::zero();
        for (&mask, &coeff) in &self.terms {
            let mut prod = T::from(coeff).unwrap();
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                prod = prod * p[i];
                m &= m - 1;
            }
            acc = acc + prod;
        }
        acc
    }

    pub fn evaluate_binary(&self, x: &StateVector) -> i64 {
        let state = x.mask();
        self.terms
            .iter()
            .filter(|(&mask, _)| state & mask == mask)
            .map(|(_, &c)| c)
            .sum()
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Formula(StructureFormula),
    Table(TruthTable),
    Paths(SetFamily),
}

/// A monotone binary structure function over `n` components.
#[derive(Debug, Clone)]
pub struct StructureFunction {
    n: usize,
    cap: usize,
    backend: Backend,
    paths: OnceLock<SetFamily>,
    cuts: OnceLock<SetFamily>,
    simple: OnceLock<SimpleForm>,
}

impl StructureFunction {
    fn with_backend(n: usize, backend: Backend) -> Self {
        StructureFunction {
            n,
            cap: DEFAULT_ENUM_CAP,
            backend,
            paths: OnceLock::new(),
            cuts: OnceLock::new(),
            simple: OnceLock::new(),
        }
    }

    /// Structure over `n` components evaluating `formula`; every atom must
    /// reference a component in `1..=n`.
    pub fn from_formula(n: usize, formula: StructureFormula) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Input(format!(
                "component count must be in 1..=64, got {n}"
            )));
        }
        let hi = formula.max_atom();
        if hi > n || hi == 0 {
            return Err(Error::InvalidComponent { index: hi, n });
        }
        if formula.min_atom() < 1 {
            return Err(Error::InvalidComponent {
                index: formula.min_atom(),
                n,
            });
        }
        Ok(StructureFunction::with_backend(n, Backend::Formula(formula)))
    }

    pub fn series(n: usize) -> Self {
        StructureFunction::from_formula(
            n,
            StructureFormula::And((1..=n).map(StructureFormula::atom).collect()),
        )
        .expect("series structure")
    }

    pub fn parallel(n: usize) -> Self {
        StructureFunction::from_formula(
            n,
            StructureFormula::Or((1..=n).map(StructureFormula::atom).collect()),
        )
        .expect("parallel structure")
    }

    pub fn k_out_of_n(k: usize, n: usize) -> Result<Self> {
        StructureFunction::from_formula(
            n,
            StructureFormula::k_out_of_n(k, (1..=n).map(StructureFormula::atom).collect())?,
        )
    }

    /// Structure from an explicit truth table. `values[mask]` is the system
    /// state for the component state `mask` (component 1 = least significant
    /// bit). Monotonicity is not enforced here; see [`Self::is_semicoherent`].
    pub fn from_truth_table(n: usize, values: &[bool]) -> Result<Self> {
        if n == 0 || n > DEFAULT_ENUM_CAP {
            return Err(Error::EnumerationCap {
                n,
                cap: DEFAULT_ENUM_CAP,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::Input(format!(
                "truth table for {n} components needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        let table = TruthTable::from_fn(n, |mask| values[mask as usize]);
        Ok(StructureFunction::with_backend(n, Backend::Table(table)))
    }

    pub(crate) fn from_eval(n: usize, cap: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        if n > cap {
            return Err(Error::EnumerationCap { n, cap });
        }
        let table = TruthTable::from_fn(n, f);
        let mut s = StructureFunction::with_backend(n, Backend::Table(table));
        s.cap = cap;
        Ok(s)
    }

    /// Structure whose minimal path family is the antichain reduction of
    /// `family`.
    pub fn from_minimal_paths(n: usize, family: &SetFamily) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if family.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: family.n(),
            });
        }
        let reduced = family.antichain_reduce();
        let s = StructureFunction::with_backend(n, Backend::Paths(reduced.clone()));
        let _ = s.paths.set(reduced);
        Ok(s)
    }

    /// Two-terminal network structure: components are the directed edges
    /// (indexed `1..=edges.len()` in input order, nodes 0-based) and the
    /// system functions iff the working edges contain a directed
    /// `source -> target` path. Minimal paths are enumerated by depth-first
    /// search over simple paths.
    pub fn from_two_terminal_graph(
        node_count: usize,
        edges: &[(usize, usize)],
        source: usize,
        target: usize,
    ) -> Result<Self> {
        if source == target {
            return Err(Error::Input("source and target must differ".into()));
        }
        for (idx, &(a, b)) in edges.iter().enumerate() {
            if a >= node_count || b >= node_count {
                return Err(Error::Input(format!(
                    "edge {} references a node outside 0..{node_count}",
                    idx + 1
                )));
            }
        }
        if edges.is_empty() || edges.len() > 64 {
            return Err(Error::Input(format!(
                "edge count must be in 1..=64, got {}",
                edges.len()
            )));
        }
        let mut outgoing: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
        for (idx, &(a, b)) in edges.iter().enumerate() {
            outgoing[a].push((b, idx));
        }

        // DFS over simple paths, collecting used-edge masks.
        let mut path_masks: Vec<u64> = Vec::new();
        let mut visited = vec![false; node_count];
        fn dfs(
            node: usize,
            mask: u64,
            target: usize,
            outgoing: &[Vec<(usize, usize)>],
            visited: &mut [bool],
            out: &mut Vec<u64>,
        ) {
            if node == target {
                out.push(mask);
                return;
            }
            visited[node] = true;
            for &(next, edge) in &outgoing[node] {
                if !visited[next] {
                    dfs(next, mask | 1 << edge, target, outgoing, visited, out);
                }
            }
            visited[node] = false;
        }
        dfs(
            source,
            0,
            target,
            &outgoing,
            &mut visited,
            &mut path_masks,
        );
        if path_masks.is_empty() {
            return Err(Error::DegenerateGraph);
        }
        let family = SetFamily::from_masks(edges.len(), path_masks).antichain_reduce();
        StructureFunction::from_minimal_paths(edges.len(), &family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn enumeration_cap(&self) -> usize {
        self.cap
    }

    /// Raise or lower the exhaustive-enumeration cap (hard limit 30).
    pub fn set_enumeration_cap(&mut self, cap: usize) {
        self.cap = cap.min(30);
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn check_cap(&self) -> Result<()> {
        if self.n > self.cap {
            return Err(Error::EnumerationCap {
                n: self.n,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn check_component(&self, c: ComponentId) -> Result<ComponentId> {
        if c.index() < 1 || c.index() > self.n {
            return Err(Error::InvalidComponent {
                index: c.index(),
                n: self.n,
            });
        }
        Ok(c)
    }

    /// Evaluate on a raw state mask (bit `i-1` = component `i`).
    pub fn eval_mask(&self, mask: u64) -> bool {
        match &self.backend {
            Backend::Formula(f) => f.eval(mask),
            Backend::Table(t) => t.get(mask),
            Backend::Paths(family) => family.masks().iter().any(|&s| mask & s == s),
        }
    }

    /// The structure value at a state vector.
    pub fn evaluate(&self, x: &StateVector) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.eval_mask(x.mask()))
    }

    /// Pivotal difference `delta_j(x) = phi(1_j, x) - phi(0_j, x)`;
    /// the state of component `j` in `x` is ignored.
    pub fn delta(&self, j: impl Into<ComponentId>, x: &StateVector) -> Result<bool> {
        let j = self.check_component(j.into())?;
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.delta_mask(j.bit(), x.mask()))
    }

    pub(crate) fn delta_mask(&self, bit: u64, mask: u64) -> bool {
        self.eval_mask(mask | bit) && !self.eval_mask(mask & !bit)
    }

    /// `mu_j(x) = phi(0_j, x)`; together with `delta` this gives the pivotal
    /// identity `phi(x) = x_j * delta_j(x) + mu_j(x)`.
    pub fn mu(&self, j: impl Into<ComponentId>, x: &StateVector) -> Result<bool> {
        let j = self.check_component(j.into())?;
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.eval_mask(x.mask() & !j.bit()))
    }

    /// True iff some state makes component `i` pivotal.
    pub fn is_relevant(&self, i: impl Into<ComponentId>) -> Result<bool> {
        let i = self.check_component(i.into())?;
        self.check_cap()?;
        let bit = i.bit();
        let others = self.full_mask() & !bit;
        Ok(submasks(others).any(|m| self.delta_mask(bit, m)))
    }

    /// Monotone with `phi(0) = 0` and `phi(1) = 1`.
    pub fn is_semicoherent(&self) -> Result<bool> {
        Ok(self.semicoherence_defect()?.is_none())
    }

    pub(crate) fn semicoherence_defect(&self) -> Result<Option<String>> {
        self.check_cap()?;
        if self.eval_mask(0) {
            return Ok(Some("phi(all-failed) must be 0".into()));
        }
        if !self.eval_mask(self.full_mask()) {
            return Ok(Some("phi(all-working) must be 1".into()));
        }
        if let Backend::Table(_) = self.backend {
            // Formula and path backends are monotone by construction; tables
            // need the single-bit check phi(m) <= phi(m | bit).
            let full = self.full_mask();
            for mask in 0..=full {
                if self.eval_mask(mask) {
                    continue;
                }
                let mut sub = mask;
                while sub != 0 {
                    let bit = sub & sub.wrapping_neg();
                    sub &= sub - 1;
                    if self.eval_mask(mask & !bit) {
                        return Ok(Some(format!(
                            "not monotone: phi({:b}) = 1 but phi({mask:b}) = 0",
                            mask & !bit
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Semi-coherent with every component relevant.
    pub fn is_coherent(&self) -> Result<bool> {
        if !self.is_semicoherent()? {
            return Ok(false);
        }
        for i in 1..=self.n {
            if !self.is_relevant(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The dual structure `phi^D(x) = 1 - phi(1 - x)`. Formula backends are
    /// dualized symbolically; other backends require enumeration within cap.
    pub fn dual(&self) -> Result<StructureFunction> {
        let mut out = match &self.backend {
            Backend::Formula(f) => StructureFunction::from_formula(self.n, f.dual())?,
            Backend::Table(_) => {
                let full = self.full_mask();
                StructureFunction::from_eval(self.n, self.cap, |m| {
                    !self.eval_mask(full & !m)
                })?
            }
            Backend::Paths(_) => {
                let cuts = self.minimal_cuts()?.clone();
                StructureFunction::from_minimal_paths(self.n, &cuts)?
            }
        };
        out.cap = self.cap;
        Ok(out)
    }

    /// Minimal path family `alpha(phi)` in canonical order.
    pub fn minimal_paths(&self) -> Result<&SetFamily> {
        if self.paths.get().is_none() {
            let family = match &self.backend {
                Backend::Paths(f) => f.clone(),
                _ => {
                    self.require_semicoherent()?;
                    let masks = minimal_true_points(self.n, |m| self.eval_mask(m));
                    SetFamily::from_masks(self.n, masks)
                }
            };
            let _ = self.paths.set(family);
        }
        Ok(self.paths.get().unwrap())
    }

    /// Minimal cut family `beta(phi)` in canonical order.
    pub fn minimal_cuts(&self) -> Result<&SetFamily> {
        if self.cuts.get().is_none() {
            self.check_cap()?;
            self.require_semicoherent()?;
            let full = self.full_mask();
            // Minimal cuts of phi are the minimal paths of the dual.
            let masks = minimal_true_points(self.n, |m| !self.eval_mask(full & !m));
            let _ = self.cuts.set(SetFamily::from_masks(self.n, masks));
        }
        Ok(self.cuts.get().unwrap())
    }

    fn require_semicoherent(&self) -> Result<()> {
        if let Some(defect) = self.semicoherence_defect()? {
            return Err(Error::NotSemicoherent(defect));
        }
        Ok(())
    }

    /// The simple form of the structure, computed by a Moebius transform of
    /// the truth table and cached.
    pub fn simple_form(&self) -> Result<&SimpleForm> {
        if self.simple.get().is_none() {
            self.check_cap()?;
            let size = 1usize << self.n;
            let mut coeff: Vec<i64> = (0..size as u64)
                .map(|m| self.eval_mask(m) as i64)
                .collect();
            for i in 0..self.n {
                let bit = 1usize << i;
                for mask in 0..size {
                    if mask & bit != 0 {
                        coeff[mask] -= coeff[mask ^ bit];
                    }
                }
            }
            let terms: BTreeMap<u64, i64> = coeff
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(m, c)| (m as u64, c))
                .collect();
            let _ = self.simple.set(SimpleForm { n: self.n, terms });
        }
        Ok(self.simple.get().unwrap())
    }

    pub(crate) fn simple_cached(&self) -> Option<&SimpleForm> {
        self.simple.get()
    }

    /// Substitute `inner` for component `position` of `self`. Inner
    /// components occupy slots `position ..= position + inner.n - 1` of the
    /// result; outer components above `position` shift up by `inner.n - 1`.
    pub fn compose(
        &self,
        position: impl Into<ComponentId>,
        inner: &StructureFunction,
    ) -> Result<StructureFunction> {
        let position = self.check_component(position.into())?.index();
        let n_new = self.n - 1 + inner.n;
        let shift = inner.n - 1;
        if let (Backend::Formula(outer_f), Backend::Formula(inner_f)) =
            (&self.backend, &inner.backend)
        {
            let inner_shifted = inner_f.substitute(&|i| StructureFormula::atom(i + position - 1));
            let composed = outer_f.substitute(&|j| {
                if j == position {
                    inner_shifted.clone()
                } else if j < position {
                    StructureFormula::atom(j)
                } else {
                    StructureFormula::atom(j + shift)
                }
            });
            let mut out = StructureFunction::from_formula(n_new, composed)?;
            out.cap = self.cap.max(inner.cap);
            return Ok(out);
        }
        let cap = self.cap.max(inner.cap);
        let inner_mask_bits = inner.full_mask();
        StructureFunction::from_eval(n_new, cap, |mask| {
            let low = mask & ((1u64 << (position - 1)) - 1);
            let inner_mask = mask >> (position - 1) & inner_mask_bits;
            let high = mask >> (position - 1 + inner.n);
            let y = inner.eval_mask(inner_mask);
            let outer_mask = low | (y as u64) << (position - 1) | high << position;
            self.eval_mask(outer_mask)
        })
    }

    /// Truth-table equality with another structure over the same components.
    pub fn equivalent(&self, other: &StructureFunction) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        self.check_cap()?;
        Ok((0..=self.full_mask()).all(|m| self.eval_mask(m) == other.eval_mask(m)))
    }
}

/// Iterate over all submasks of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut current = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = current;
        if current == mask {
            done = true;
        } else {
            current = (current.wrapping_sub(mask)) & mask;
        }
        Some(out)
    })
}

/// Minimal true points of a monotone function: states evaluating to 1 for
/// which clearing any single bit gives 0.
fn minimal_true_points(n: usize, eval: impl Fn(u64) -> bool) -> Vec<u64> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for mask in 0..=full {
        if !eval(mask) {
            continue;
        }
        let mut minimal = true;
        let mut m = mask;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            m &= m - 1;
            if eval(mask & !bit) {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(mask);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::testutil::gab;

    fn sv(bits: &[u8]) -> StateVector {
        StateVector::from_ints(bits)
    }

    #[test]
    fn evaluate_series() {
        let s = StructureFunction::series(3);
        assert!(s.evaluate(&sv(&[1, 1, 1])).unwrap());
        assert!(!s.evaluate(&sv(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn evaluate_gab_path_state() {
        let g = gab();
        let mut states = [0u8; 9];
        for i in [1usize, 3, 8] {
            states[i - 1] = 1;
        }
        assert!(g.evaluate(&sv(&states)).unwrap());
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let s = StructureFunction::series(3);
        assert!(matches!(
            s.evaluate(&sv(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn delta_mu_examples() {
        let s = StructureFunction::series(3);
        let x = sv(&[0, 1, 1]);
        assert!(s.delta(1, &x).unwrap());
        assert!(!s.mu(1, &x).unwrap());

        let p = StructureFunction::parallel(3);
        let x = sv(&[0, 1, 0]);
        assert!(!p.delta(1, &x).unwrap());
        assert!(p.mu(1, &x).unwrap());
    }

    #[test]
    fn delta_mu_exhaustive_series2() {
        // j = 2 with component 1 failed: never pivotal, mu always 0.
        let s = StructureFunction::series(2);
        for second in [0u8, 1] {
            let x = sv(&[0, second]);
            assert!(!s.delta(2, &x).unwrap());
            assert!(!s.mu(2, &x).unwrap());
        }
    }

    #[test]
    fn pivotal_identity_exhaustive() {
        for phi in [
            StructureFunction::series(4),
            StructureFunction::parallel(4),
            StructureFunction::k_out_of_n(2, 4).unwrap(),
            gab(),
        ] {
            let full = phi.full_mask();
            for mask in 0..=full {
                let x = StateVector::from_mask(phi.n(), mask);
                let v = phi.evaluate(&x).unwrap();
                for j in 1..=phi.n() {
                    let xj = x.get(ComponentId::new(j)).unwrap();
                    let d = phi.delta(j, &x).unwrap();
                    let m = phi.mu(j, &x).unwrap();
                    assert_eq!(v as u8, (xj as u8) * (d as u8) + m as u8);
                }
            }
        }
    }

    #[test]
    fn coherence_checks() {
        assert!(StructureFunction::series(3).is_coherent().unwrap());

        let constant_one =
            StructureFunction::from_truth_table(2, &[true, true, true, true]).unwrap();
        assert!(!constant_one.is_semicoherent().unwrap());

        // phi(x1, x2) = x1: component 2 irrelevant.
        let f = StructureFunction::from_formula(2, StructureFormula::atom(1)).unwrap();
        assert!(!f.is_relevant(2).unwrap());
        assert!(f.is_semicoherent().unwrap());
        assert!(!f.is_coherent().unwrap());
    }

    #[test]
    fn dual_series_is_parallel() {
        let d = StructureFunction::series(4).dual().unwrap();
        assert!(d.equivalent(&StructureFunction::parallel(4)).unwrap());
    }

    #[test]
    fn dual_swaps_paths_and_cuts() {
        let g = gab();
        let d = g.dual().unwrap();
        assert_eq!(d.minimal_cuts().unwrap(), g.minimal_paths().unwrap());
        assert_eq!(d.minimal_paths().unwrap(), g.minimal_cuts().unwrap());
    }

    #[test]
    fn minimal_paths_series() {
        let s = StructureFunction::series(3);
        assert_eq!(s.minimal_paths().unwrap().sets(), vec![vec![1, 2, 3]]);
        assert_eq!(
            s.minimal_cuts().unwrap().sets(),
            vec![vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn gab_table1_paths() {
        let g = gab();
        assert_eq!(
            g.minimal_paths().unwrap().sets(),
            vec![
                vec![1, 3, 8],
                vec![2, 6, 9],
                vec![1, 4, 7, 8],
                vec![2, 5, 7, 8]
            ]
        );
    }

    #[test]
    fn gab_table2_cuts() {
        let g = gab();
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 2],
            vec![2, 8],
            vec![6, 8],
            vec![8, 9],
            vec![1, 5, 6],
            vec![1, 5, 9],
            vec![1, 6, 7],
            vec![1, 6, 8],
            vec![1, 7, 9],
            vec![2, 3, 4],
            vec![2, 3, 7],
            vec![3, 6, 7],
            vec![3, 7, 9],
            vec![3, 4, 5, 6],
            vec![3, 4, 5, 9],
        ];
        assert_eq!(g.minimal_cuts().unwrap().sets(), expected);
    }

    #[test]
    fn from_minimal_paths_reduces_antichain() {
        let family = SetFamily::new(2, vec![vec![1], vec![1, 2]]).unwrap();
        let s = StructureFunction::from_minimal_paths(2, &family).unwrap();
        assert_eq!(s.minimal_paths().unwrap().sets(), vec![vec![1]]);

        let series = SetFamily::new(3, vec![vec![1, 2, 3]]).unwrap();
        let s = StructureFunction::from_minimal_paths(3, &series).unwrap();
        assert!(s.equivalent(&StructureFunction::series(3)).unwrap());
    }

    #[test]
    fn from_minimal_paths_rejects_bad_input() {
        assert!(matches!(
            StructureFunction::from_minimal_paths(3, &SetFamily::new(3, vec![]).unwrap()),
            Err(Error::EmptyFamily)
        ));
        assert!(matches!(
            SetFamily::new(3, vec![vec![1, 4]]),
            Err(Error::InvalidComponent { index: 4, n: 3 })
        ));
    }

    #[test]
    fn simple_form_small_structures() {
        let s = StructureFunction::series(2);
        let sf = s.simple_form().unwrap();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf.coefficient(&[1, 2]), 1);

        let p = StructureFunction::parallel(2);
        let sf = p.simple_form().unwrap();
        assert_eq!(sf.coefficient(&[1]), 1);
        assert_eq!(sf.coefficient(&[2]), 1);
        assert_eq!(sf.coefficient(&[1, 2]), -1);
        assert_eq!(sf.len(), 3);
    }

    #[test]
    fn simple_form_matches_truth_table_gab() {
        let g = gab();
        let sf = g.simple_form().unwrap();
        for mask in 0..=g.full_mask() {
            let x = StateVector::from_mask(9, mask);
            assert_eq!(sf.evaluate_binary(&x), g.eval_mask(mask) as i64);
        }
    }

    #[test]
    fn graph_trivial_cases() {
        let one = StructureFunction::from_two_terminal_graph(2, &[(0, 1)], 0, 1).unwrap();
        assert!(one.equivalent(&StructureFunction::series(1)).unwrap());

        let two = StructureFunction::from_two_terminal_graph(2, &[(0, 1), (0, 1)], 0, 1).unwrap();
        assert!(two.equivalent(&StructureFunction::parallel(2)).unwrap());

        assert!(matches!(
            StructureFunction::from_two_terminal_graph(3, &[(0, 1)], 0, 2),
            Err(Error::DegenerateGraph)
        ));
    }

    #[test]
    fn compose_series_with_parallel() {
        let outer = StructureFunction::series(2);
        let inner = StructureFunction::parallel(2);
        let composed = outer.compose(1, &inner).unwrap();
        assert_eq!(composed.n(), 3);
        assert_eq!(
            composed.minimal_paths().unwrap().sets(),
            vec![vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn compose_atom_is_identity() {
        let outer = StructureFunction::k_out_of_n(2, 3).unwrap();
        let composed = outer.compose(2, &StructureFunction::series(1)).unwrap();
        assert!(composed.equivalent(&outer).unwrap());
    }

    #[test]
    fn compose_builds_birstruct() {
        // Two series components feeding a 3-way parallel block.
        let skeleton = StructureFunction::series(3);
        let composed = skeleton.compose(3, &StructureFunction::parallel(3)).unwrap();
        assert_eq!(composed.n(), 5);
        assert_eq!(
            composed.minimal_paths().unwrap().sets(),
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]
        );
    }

    #[test]
    fn truth_table_backend_agrees_with_formula() {
        let formula = StructureFunction::k_out_of_n(2, 4).unwrap();
        let values: Vec<bool> = (0..16u64).map(|m| formula.eval_mask(m)).collect();
        let table = StructureFunction::from_truth_table(4, &values).unwrap();
        let paths = formula.minimal_paths().unwrap().clone();
        let from_paths = StructureFunction::from_minimal_paths(4, &paths).unwrap();
        assert!(table.equivalent(&formula).unwrap());
        assert!(from_paths.equivalent(&formula).unwrap());
    }

    #[test]
    fn enumeration_cap_enforced() {
        let mut s = StructureFunction::series(6);
        s.set_enumeration_cap(5);
        assert!(matches!(
            s.minimal_cuts(),
            Err(Error::EnumerationCap { n: 6, cap: 5 })
        ));
    }
}
