//! Sequential inductive limits of product instances along matrix maps.
//!
//! Elements of the limit are represented by finitely described *threads*: a
//! start stage and one or more explicit entries, continued forever by the
//! images under the connecting maps. A thread with entries `(s_i)` stands
//! for the increasing sequence `0, ..., 0, s_start, s_{start+1}, ...` with
//! `map(s_j) <= s_{j+1}`.
//!
//! The pre-order is `a <= b` iff for every stage `i` and every `s` compactly
//! contained in `a`'s entry there, the image of `s` is eventually compactly
//! contained in `b`'s entries. That quantifier is not decidable in general,
//! so comparisons return a three-valued [`Tri`]: `Le` and `NotLe` answers
//! are sound (backed by a stage-uniform domination argument or by a
//! certificate that remains valid at every horizon), and `Unknown` records
//! the horizon at which the search was abandoned.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::certify::{inf_mass_functional, never_nonnegative, CertKind, SubMatrix};
use crate::extnat::ExtNat;
use crate::instance::CuInstance;
use crate::laws::LawReport;
use crate::matrix_map::MatrixCuMap;
use crate::vector::ExtNatVector;

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

/// A sequence of product instances and matrix maps, with an optional
/// stationary tail repeating the last map forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuDiagram {
    dims: Vec<usize>,
    maps: Vec<MatrixCuMap>,
    stationary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    Empty,
    BadMapCount { expected: usize, got: usize },
    BadMapShape { index: usize, expected: (usize, usize), got: (usize, usize) },
}

impl core::fmt::Display for DiagramError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DiagramError::Empty => write!(f, "diagram needs at least one stage"),
            DiagramError::BadMapCount { expected, got } => {
                write!(f, "expected {expected} connecting maps, got {got}")
            }
            DiagramError::BadMapShape { index, expected, got } => write!(
                f,
                "map at stage {index} has shape {}x{}, expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
        }
    }
}

impl CuDiagram {
    /// `dims[i]` is the vector dimension of stage `i+1`. A stationary
    /// diagram has `maps.len() == dims.len()` with a square last map that
    /// repeats forever; a finite diagram has `maps.len() == dims.len() - 1`.
    pub fn new(
        dims: Vec<usize>,
        maps: Vec<MatrixCuMap>,
        stationary: bool,
    ) -> Result<Self, DiagramError> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(DiagramError::Empty);
        }
        let expected = if stationary { dims.len() } else { dims.len() - 1 };
        if maps.len() != expected {
            return Err(DiagramError::BadMapCount { expected, got: maps.len() });
        }
        for (i, m) in maps.iter().enumerate() {
            let in_dim = dims[i];
            let out_dim = if i + 1 < dims.len() { dims[i + 1] } else { dims[i] };
            if m.in_dim() != in_dim || m.out_dim() != out_dim {
                return Err(DiagramError::BadMapShape {
                    index: i + 1,
                    expected: (out_dim, in_dim),
                    got: (m.out_dim(), m.in_dim()),
                });
            }
        }
        Ok(CuDiagram { dims, maps, stationary })
    }

    /// Stationary diagram generated by a single square map.
    pub fn from_stationary_map(map: MatrixCuMap) -> Self {
        assert_eq!(map.in_dim(), map.out_dim());
        CuDiagram::new(alloc::vec![map.in_dim()], alloc::vec![map], true).unwrap()
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    /// Final stage of a finite diagram; `None` when a tail repeats forever.
    pub fn last_stage(&self) -> Option<u32> {
        if self.stationary {
            None
        } else {
            Some(self.dims.len() as u32)
        }
    }

    /// First stage from which the repeated map applies.
    pub fn tail_start(&self) -> u32 {
        self.dims.len() as u32
    }

    /// The repeated square map of a stationary diagram.
    pub fn stationary_map(&self) -> Option<&MatrixCuMap> {
        if self.stationary {
            self.maps.last()
        } else {
            None
        }
    }

    pub fn stage_dim(&self, stage: u32) -> Result<usize, ThreadError> {
        if stage == 0 {
            return Err(ThreadError::StageOutOfRange { stage });
        }
        let idx = (stage - 1) as usize;
        if idx < self.dims.len() {
            Ok(self.dims[idx])
        } else if self.stationary {
            Ok(*self.dims.last().unwrap())
        } else {
            Err(ThreadError::StageOutOfRange { stage })
        }
    }

    /// Connecting map from `stage` to `stage + 1`.
    pub fn map_from(&self, stage: u32) -> Result<&MatrixCuMap, ThreadError> {
        if stage == 0 {
            return Err(ThreadError::StageOutOfRange { stage });
        }
        let idx = (stage - 1) as usize;
        if idx < self.maps.len() {
            Ok(&self.maps[idx])
        } else if self.stationary {
            Ok(self.maps.last().unwrap())
        } else {
            Err(ThreadError::StageOutOfRange { stage: stage + 1 })
        }
    }

    /// Clamp a probe horizon to the available stages.
    pub fn cap_stage(&self, horizon: u32) -> u32 {
        match self.last_stage() {
            Some(last) => horizon.min(last),
            None => horizon,
        }
    }
}

// ---------------------------------------------------------------------------
// Threads
// ---------------------------------------------------------------------------

/// A finitely described element of the limit: explicit entries from
/// `start`, then the image tail. A single entry is a pure image thread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread {
    start: u32,
    entries: Vec<ExtNatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreadError {
    StageOutOfRange { stage: u32 },
    WrongDimension { stage: u32, expected: usize, got: usize },
    NotIncreasing { stage: u32 },
    Parse(String),
}

impl core::fmt::Display for ThreadError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ThreadError::StageOutOfRange { stage } => {
                write!(f, "stage {stage} lies outside the diagram (no stationary tail)")
            }
            ThreadError::WrongDimension { stage, expected, got } => {
                write!(f, "entry at stage {stage} has dimension {got}, expected {expected}")
            }
            ThreadError::NotIncreasing { stage } => {
                write!(f, "entry at stage {stage} is not above the image of its predecessor")
            }
            ThreadError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl Thread {
    /// The image thread `0, ..., 0, s, map(s), map(map(s)), ...`.
    pub fn image(d: &CuDiagram, start: u32, seed: ExtNatVector) -> Result<Thread, ThreadError> {
        let t = Thread { start, entries: alloc::vec![seed] };
        t.validate(d)?;
        Ok(t)
    }

    /// Explicit entries from `start`, continued by images of the last.
    pub fn prefix(
        d: &CuDiagram,
        start: u32,
        entries: Vec<ExtNatVector>,
    ) -> Result<Thread, ThreadError> {
        assert!(!entries.is_empty());
        let t = Thread { start, entries };
        t.validate(d)?;
        Ok(t)
    }

    pub fn zero(d: &CuDiagram) -> Thread {
        Thread {
            start: 1,
            entries: alloc::vec![ExtNatVector::zeros(d.stage_dim(1).unwrap())],
        }
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn explicit_entries(&self) -> &[ExtNatVector] {
        &self.entries
    }

    pub fn last_explicit(&self) -> u32 {
        self.start + self.entries.len() as u32 - 1
    }

    pub fn validate(&self, d: &CuDiagram) -> Result<(), ThreadError> {
        if self.start == 0 {
            return Err(ThreadError::StageOutOfRange { stage: 0 });
        }
        for (off, e) in self.entries.iter().enumerate() {
            let stage = self.start + off as u32;
            let dim = d.stage_dim(stage)?;
            if e.dim() != dim {
                return Err(ThreadError::WrongDimension { stage, expected: dim, got: e.dim() });
            }
            if off > 0 {
                let prev = &self.entries[off - 1];
                let image = d.map_from(stage - 1)?.apply(prev).expect("validated dims");
                if !image.leq(e) {
                    return Err(ThreadError::NotIncreasing { stage });
                }
            }
        }
        // The tail must be continuable (a finite diagram may end exactly at
        // the last explicit stage).
        Ok(())
    }

    /// Entry at a stage: zero before `start`, explicit within the prefix,
    /// then the image of the last explicit entry.
    pub fn entry(&self, d: &CuDiagram, stage: u32) -> Result<ExtNatVector, ThreadError> {
        if stage == 0 {
            return Err(ThreadError::StageOutOfRange { stage });
        }
        let dim = d.stage_dim(stage)?;
        if stage < self.start {
            return Ok(ExtNatVector::zeros(dim));
        }
        let off = (stage - self.start) as usize;
        if off < self.entries.len() {
            return Ok(self.entries[off].clone());
        }
        let mut v = self.entries.last().unwrap().clone();
        for j in self.last_explicit()..stage {
            v = d.map_from(j)?.apply(&v).expect("validated dims");
        }
        Ok(v)
    }

    /// Entries for stages `1..=hmax`.
    pub fn expand(&self, d: &CuDiagram, hmax: u32) -> Result<Vec<ExtNatVector>, ThreadError> {
        let mut out = Vec::with_capacity(hmax as usize);
        let mut current: Option<ExtNatVector> = None;
        for stage in 1..=hmax {
            let v = if stage < self.start {
                ExtNatVector::zeros(d.stage_dim(stage)?)
            } else {
                let off = (stage - self.start) as usize;
                if off < self.entries.len() {
                    self.entries[off].clone()
                } else {
                    let prev = current.clone().expect("past the prefix");
                    d.map_from(stage - 1)?.apply(&prev).expect("validated dims")
                }
            };
            current = Some(v.clone());
            out.push(v);
        }
        Ok(out)
    }

    /// Pointwise sum, aligned on stages.
    pub fn add(&self, d: &CuDiagram, other: &Thread) -> Result<Thread, ThreadError> {
        let start = self.start.min(other.start);
        let last = self.last_explicit().max(other.last_explicit());
        let mut entries = Vec::new();
        for stage in start..=last {
            entries.push(self.entry(d, stage)?.add(&other.entry(d, stage)?));
        }
        let t = Thread { start, entries }.normalized(d);
        t.validate(d)?;
        Ok(t)
    }

    /// Drop leading zero entries and trailing entries that are exact images
    /// of their predecessor.
    pub fn normalized(&self, d: &CuDiagram) -> Thread {
        let mut start = self.start;
        let mut entries = self.entries.clone();
        while entries.len() > 1 && entries[0].is_zero() {
            entries.remove(0);
            start += 1;
        }
        while entries.len() > 1 {
            let n = entries.len();
            let stage = start + n as u32 - 2;
            let image =
                d.map_from(stage).unwrap().apply(&entries[n - 2]).expect("validated dims");
            if image == entries[n - 1] {
                entries.pop();
            } else {
                break;
            }
        }
        Thread { start, entries }
    }

    /// Does this thread represent the class of a finite vector? Infinite
    /// coordinates can die along maps with zero rows, so the support
    /// evolution is followed to a fixed point or cycle.
    pub fn is_compact_class(&self, d: &CuDiagram) -> bool {
        let mut v = self.entries.last().unwrap().clone();
        if self.entries.iter().all(|e| e.is_finite()) {
            return true;
        }
        let mut stage = self.last_explicit();
        let mut seen: Vec<Vec<usize>> = alloc::vec![v.inf_support()];
        loop {
            if v.is_finite() {
                return true;
            }
            let Ok(map) = d.map_from(stage) else {
                return false; // finite diagram, still infinite at its end
            };
            v = map.apply(&v).expect("validated dims");
            stage += 1;
            let s = v.inf_support();
            if s.is_empty() {
                return true;
            }
            if seen.contains(&s) {
                return false;
            }
            seen.push(s);
        }
    }

    /// Text form: `@start:` then the entries joined by `;`, with `|tail`
    /// marking an explicit prefix.
    pub fn encode(&self) -> String {
        let mut s = format!("@{}:", self.start);
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            s.push_str(&format!("{e}"));
        }
        if self.entries.len() > 1 {
            s.push_str("|tail");
        }
        s
    }

    /// Parse the text form against a diagram (the diagram fixes the stage
    /// dimensions, so flat comma-separated prefixes are unambiguous).
    pub fn parse(d: &CuDiagram, text: &str) -> Result<Thread, ThreadError> {
        let text = text.trim();
        let rest = text
            .strip_prefix('@')
            .ok_or_else(|| ThreadError::Parse(format!("thread {text:?} must start with '@'")))?;
        let (stage_str, body) = rest.split_once(':').ok_or_else(|| {
            ThreadError::Parse(format!("thread {text:?} needs ':' after the stage index"))
        })?;
        let start: u32 = stage_str
            .parse()
            .map_err(|_| ThreadError::Parse(format!("bad stage index {stage_str:?}")))?;
        let body = body.strip_suffix("|tail").unwrap_or(body);
        let mut entries = Vec::new();
        if body.contains(';') {
            for (off, part) in body.split(';').enumerate() {
                let dim = d.stage_dim(start + off as u32)?;
                entries.push(crate::vector::parse_vector(part, dim).map_err(ThreadError::Parse)?);
            }
        } else {
            // Flat comma-separated values, chunked by the stage dimensions.
            let values: Result<Vec<ExtNat>, _> =
                body.split(',').map(|t| t.trim().parse::<ExtNat>()).collect();
            let values =
                values.map_err(|e| ThreadError::Parse(format!("bad entry in {text:?}: {e}")))?;
            let mut taken = 0;
            let mut stage = start;
            while taken < values.len() {
                let dim = d.stage_dim(stage)?;
                if taken + dim > values.len() {
                    return Err(ThreadError::Parse(format!(
                        "thread {text:?} does not split into whole stage vectors"
                    )));
                }
                entries.push(ExtNatVector::new(values[taken..taken + dim].to_vec()));
                taken += dim;
                stage += 1;
            }
        }
        if entries.is_empty() {
            return Err(ThreadError::Parse(format!("thread {text:?} has no entries")));
        }
        Thread::prefix(d, start, entries)
    }
}

// ---------------------------------------------------------------------------
// Three-valued comparison
// ---------------------------------------------------------------------------

/// Why a comparison was refuted; certificates stay valid at every horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefutationKind {
    /// An eigenvector functional separates the two sides.
    Perron,
    /// A zero-trimmed subsystem functional: the witness deficit persists.
    Deficit,
    /// The diagram is finite and every stage has been examined.
    LastStage,
}

impl RefutationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RefutationKind::Perron => "perron",
            RefutationKind::Deficit => "deficit",
            RefutationKind::LastStage => "last-stage",
        }
    }
}

/// Three-valued comparison result. `Unknown` records the horizon at which
/// the search was abandoned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Le,
    NotLe(RefutationKind),
    Unknown(u32),
}

impl Tri {
    pub fn is_le(&self) -> bool {
        matches!(self, Tri::Le)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Tri::Le => "LE",
            Tri::NotLe(_) => "NotLE",
            Tri::Unknown(_) => "Unknown",
        }
    }
}

// ---------------------------------------------------------------------------
// The pre-order
// ---------------------------------------------------------------------------

/// Decide `a <= b` up to `horizon`. `Le` and `NotLe` answers are sound.
pub fn thread_leq(d: &CuDiagram, a: &Thread, b: &Thread, horizon: u32) -> Tri {
    let hmax = d.cap_stage(
        d.cap_stage(horizon).max(a.last_explicit()).max(b.last_explicit()),
    );
    let t_entries = b.expand(d, hmax).expect("thread fits the diagram");
    let mut unknown = false;
    for i in a.start()..=a.last_explicit() {
        if i > hmax {
            unknown = true;
            break;
        }
        let v = a.entry(d, i).expect("explicit entry");
        if v.is_zero() {
            continue;
        }
        if confirm_stage(d, i, &v, &t_entries, hmax, b.last_explicit()) {
            continue;
        }
        match refute_stage(d, i, &v, b, &t_entries, hmax) {
            Some(kind) => return Tri::NotLe(kind),
            None => unknown = true,
        }
    }
    if unknown {
        Tri::Unknown(horizon)
    } else {
        Tri::Le
    }
}

/// Equivalence is the two-way pre-order.
pub fn thread_equiv(d: &CuDiagram, a: &Thread, b: &Thread, horizon: u32) -> Tri {
    match thread_leq(d, a, b, horizon) {
        Tri::NotLe(k) => Tri::NotLe(k),
        Tri::Unknown(h) => match thread_leq(d, b, a, horizon) {
            Tri::NotLe(k) => Tri::NotLe(k),
            _ => Tri::Unknown(h),
        },
        Tri::Le => thread_leq(d, b, a, horizon),
    }
}

/// Soundly confirm that every basis witness under `v` (at stage `i`) is
/// eventually dominated by `b`'s entries.
fn confirm_stage(
    d: &CuDiagram,
    i: u32,
    v: &ExtNatVector,
    t_entries: &[ExtNatVector],
    hmax: u32,
    tail_from: u32,
) -> bool {
    let vinf = v.inf_support();
    let vhat = v.finite_part();

    // Stage-uniform rule: find one stage where the finite part is dominated
    // and no infinite coordinate of `v` feeds a finite coordinate of `b`.
    // Once such a stage exists the same stage absorbs every basis witness.
    let mut cum = MatrixCuMap::identity(v.dim());
    let mut fimg = vhat.clone();
    for j in i..=hmax {
        if j > i {
            let step = d.map_from(j - 1).expect("within horizon");
            cum = step.compose(&cum).expect("chain shapes");
            fimg = step.apply(&fimg).expect("chain shapes");
        }
        let t = &t_entries[(j - 1) as usize];
        let mut ok = true;
        for c in 0..t.dim() {
            match t.coord(c) {
                ExtNat::Inf => {}
                ExtNat::Fin(f) => {
                    if vinf.iter().any(|&ci| cum.entry(c, ci) > 0) {
                        ok = false;
                        break;
                    }
                    let img = fimg.coord(c).finite().expect("image of finite part");
                    if img > f {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            return true;
        }
    }

    growth_rule(d, i, v, t_entries, hmax, tail_from)
}

/// Growth-absorption rule for stationary tails: if between two stages the
/// slack of `b` over the image of `v`'s finite part grows by at least the
/// infinite-mass multiplier while the multiplier itself does not grow, the
/// slack keeps growing round after round and absorbs every basis depth.
/// Only valid where `b`'s entries evolve exactly by the repeated map, i.e.
/// past both the diagram's tail start and `b`'s explicit prefix.
fn growth_rule(
    d: &CuDiagram,
    i: u32,
    v: &ExtNatVector,
    t_entries: &[ExtNatVector],
    hmax: u32,
    tail_from: u32,
) -> bool {
    if d.stationary_map().is_none() {
        return false;
    }
    let j0 = i.max(d.tail_start()).max(tail_from);
    if j0 + 1 > hmax {
        return false;
    }
    // Stable infinity support of b's entries: the support evolution is a
    // deterministic map on subsets, so two equal consecutive supports stay
    // fixed forever.
    let mut j1 = None;
    for j in j0..hmax {
        if t_entries[(j - 1) as usize].inf_support() == t_entries[j as usize].inf_support() {
            j1 = Some(j);
            break;
        }
    }
    let Some(j1) = j1 else { return false };
    let s_inf = t_entries[(j1 - 1) as usize].inf_support();
    let kd = t_entries[(j1 - 1) as usize].dim();
    let n_coords: Vec<usize> = (0..kd).filter(|c| !s_inf.contains(c)).collect();
    if n_coords.is_empty() {
        // b is eventually infinite everywhere; witnesses are always finite.
        return true;
    }

    // Orbits of the finite part and of the infinite-coordinate indicator.
    let mut f = v.finite_part();
    let mut g = {
        let mut coords = alloc::vec![ExtNat::Fin(0); v.dim()];
        for &c in &v.inf_support() {
            coords[c] = ExtNat::Fin(1);
        }
        ExtNatVector::new(coords)
    };
    let mut f_orbit = Vec::new();
    let mut g_orbit = Vec::new();
    for j in i..=hmax {
        if j > i {
            let step = d.map_from(j - 1).expect("within horizon");
            f = step.apply(&f).expect("chain shapes");
            g = step.apply(&g).expect("chain shapes");
        }
        if j >= j1 {
            f_orbit.push(f.clone());
            g_orbit.push(g.clone());
        }
    }
    let fin = |x: ExtNat| -> i128 {
        i128::try_from(x.finite().expect("finite orbit value")).expect("orbit value fits i128")
    };
    let window = f_orbit.len();
    let slack = |idx: usize, c: usize| -> Option<i128> {
        let t = &t_entries[(j1 - 1) as usize + idx];
        t.coord(c)
            .finite()
            .map(|tf| i128::try_from(tf).expect("entry fits i128") - fin(f_orbit[idx].coord(c)))
    };
    for ja in 0..window {
        if n_coords.iter().any(|&c| slack(ja, c).map_or(true, |s| s < 0)) {
            continue;
        }
        for jb in ja + 1..window {
            let ok = n_coords.iter().all(|&c| {
                match (slack(ja, c), slack(jb, c)) {
                    (Some(sa), Some(sb)) => {
                        sb >= sa + fin(g_orbit[ja].coord(c))
                            && fin(g_orbit[jb].coord(c)) <= fin(g_orbit[ja].coord(c))
                    }
                    _ => false,
                }
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Try to refute stage `i`: find a compact witness below `v` whose images
/// are provably never dominated by `b`'s entries.
fn refute_stage(
    d: &CuDiagram,
    i: u32,
    v: &ExtNatVector,
    b: &Thread,
    t_entries: &[ExtNatVector],
    hmax: u32,
) -> Option<RefutationKind> {
    if d.last_stage().is_some() {
        // Finite diagram: the stage scan in `confirm_stage` is exhaustive
        // and exact, so its failure is conclusive.
        return Some(RefutationKind::LastStage);
    }
    let m = d.stationary_map().expect("stationary");
    let j0 = i.max(d.tail_start()).max(b.last_explicit());
    if j0 >= hmax {
        return None;
    }

    // Rule 0: an infinite coordinate of `v` supports a functional that is
    // unbounded on the witnesses but provably finite on `b`'s side.
    if !v.inf_support().is_empty() {
        if let Some(kind) = inf_trace_refutation(d, i, v, t_entries, j0, hmax, m) {
            return Some(kind);
        }
    }

    // Rule 1: difference certificate for a deep finite witness.
    let witness = if v.is_finite() { v.clone() } else { v.basis_term(hmax) };
    let mut x = witness;
    for j in i..=hmax {
        if j > i {
            x = d.map_from(j - 1).expect("within horizon").apply(&x).expect("chain shapes");
        }
        let t = &t_entries[(j - 1) as usize];
        if x.way_below(t) {
            // The witness is dominated; nothing to refute with it.
            return None;
        }
        if j >= j0 && (j as usize) < t_entries.len() {
            let s_now = t.inf_support();
            if s_now == t_entries[j as usize].inf_support() {
                let kd = t.dim();
                let n_coords: Vec<usize> = (0..kd).filter(|c| !s_now.contains(c)).collect();
                if n_coords.is_empty() {
                    return None;
                }
                let sub = SubMatrix::from_map(m, &n_coords);
                let w: Vec<BigInt> = n_coords
                    .iter()
                    .map(|&c| {
                        BigInt::from(t.coord(c).finite().expect("stable finite coordinate"))
                            - BigInt::from(x.coord(c).finite().expect("witness stays finite"))
                    })
                    .collect();
                return never_nonnegative(&sub, &w).map(|k| match k {
                    CertKind::Perron => RefutationKind::Perron,
                    CertKind::Deficit => RefutationKind::Deficit,
                });
            }
        }
    }
    None
}

/// Coordinates whose whole influence cone carries zero mass of `v`; their
/// orbit values stay identically zero.
fn orbit_zero_set(m: &MatrixCuMap, v: &ExtNatVector) -> Vec<usize> {
    (0..v.dim())
        .filter(|&c| m.reach(c).iter().all(|&c2| v.coord(c2).is_zero()))
        .collect()
}

fn inf_trace_refutation(
    d: &CuDiagram,
    i: u32,
    v: &ExtNatVector,
    t_entries: &[ExtNatVector],
    j0: u32,
    hmax: u32,
    m: &MatrixCuMap,
) -> Option<RefutationKind> {
    // Analysis stage: b's infinity support must be stable from here on.
    let mut j1 = None;
    for j in j0..hmax {
        if t_entries[(j - 1) as usize].inf_support() == t_entries[j as usize].inf_support() {
            j1 = Some(j);
            break;
        }
    }
    let j1 = j1?;
    // Push v to the analysis stage (infinities propagate saturatingly).
    let mut vv = v.clone();
    for j in i..j1 {
        vv = d.map_from(j).expect("within horizon").apply(&vv).expect("chain shapes");
    }
    let v_inf = vv.inf_support();
    if v_inf.is_empty() {
        return None;
    }
    let t1 = &t_entries[(j1 - 1) as usize];
    // Coordinates identically zero on both sides can be trimmed away.
    let za = orbit_zero_set(m, &vv);
    let zb = orbit_zero_set(m, t1);
    let shared: Vec<usize> = za.iter().copied().filter(|c| zb.contains(c)).collect();
    let c_set: Vec<usize> = (0..m.in_dim()).filter(|c| !shared.contains(c)).collect();
    let sub = SubMatrix::from_map(m, &c_set);
    let inf_locals: Vec<usize> =
        (0..c_set.len()).filter(|&l| v_inf.contains(&c_set[l])).collect();
    if inf_locals.is_empty() {
        return None;
    }
    let forbidden: Vec<usize> =
        (0..c_set.len()).filter(|&l| t1.coord(c_set[l]) == ExtNat::Inf).collect();
    if inf_mass_functional(&sub, &inf_locals, &forbidden) {
        Some(if shared.is_empty() { RefutationKind::Perron } else { RefutationKind::Deficit })
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Rapid representatives
// ---------------------------------------------------------------------------

/// A rapidly increasing presentation of a thread's class: per-stage finite
/// entries, each compactly contained in the next. Classes with genuinely
/// infinite coordinates have no rapid presentation among finitely described
/// threads — fresh basis depth is needed at every stage — so the entries
/// are materialized out to the horizon (they grow super-exponentially and
/// are kept as big integers).
#[derive(Clone, Debug)]
pub struct RapidRep {
    start: u32,
    entries: Vec<Vec<BigUint>>,
    from_source: bool,
}

impl RapidRep {
    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn last_stage(&self) -> u32 {
        self.start + self.entries.len() as u32 - 1
    }

    /// Was the input already rapidly increasing (all entries finite)?
    pub fn is_source(&self) -> bool {
        self.from_source
    }

    pub fn entry(&self, stage: u32) -> Option<&Vec<BigUint>> {
        if stage < self.start {
            return None;
        }
        self.entries.get((stage - self.start) as usize)
    }

    /// Entry as a plain vector, when it fits.
    pub fn entry_as_vector(&self, stage: u32) -> Option<ExtNatVector> {
        let e = self.entry(stage)?;
        let coords: Option<Vec<ExtNat>> = e
            .iter()
            .map(|b| u128::try_from(b.clone()).ok().map(ExtNat::Fin))
            .collect();
        coords.map(ExtNatVector::new)
    }
}

fn apply_big(m: &MatrixCuMap, v: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(m.out_dim());
    for row in m.rows() {
        let mut acc = BigUint::zero();
        for (coef, x) in row.iter().zip(v) {
            acc += x * BigUint::from(*coef);
        }
        out.push(acc);
    }
    out
}

fn big_max(v: &[BigUint]) -> BigUint {
    v.iter().cloned().max().unwrap_or_else(BigUint::zero)
}

/// Basis term of `v` at (big) depth `n`: finite coordinates ramp to their
/// value, infinite coordinates carry `n`.
fn big_basis_term(v: &ExtNatVector, n: &BigUint) -> Vec<BigUint> {
    let nm1 = if n.is_zero() { BigUint::zero() } else { n - 1u32 };
    v.coords()
        .iter()
        .map(|c| match c {
            ExtNat::Fin(f) => nm1.clone().min(BigUint::from(*f)),
            ExtNat::Inf => n.clone(),
        })
        .collect()
}

/// Rapid representative of `a` out to `horizon`. A thread whose entries are
/// all finite is already rapid and is returned unchanged; otherwise each
/// entry is replaced by a basis term whose depth at least doubles past the
/// previous image, so every fixed witness is eventually absorbed while the
/// finite coordinates are tracked exactly.
pub fn rapid_representative(d: &CuDiagram, a: &Thread, horizon: u32) -> RapidRep {
    let hmax = d.cap_stage(d.cap_stage(horizon).max(a.last_explicit()));
    let s_entries = a.expand(d, hmax).expect("thread fits the diagram");
    let start = a.start();
    if s_entries.iter().all(|e| e.is_finite()) {
        let entries = s_entries[(start - 1) as usize..]
            .iter()
            .map(|e| e.coords().iter().map(|c| BigUint::from(c.finite().unwrap())).collect())
            .collect();
        return RapidRep { start, entries, from_source: true };
    }
    let mut entries: Vec<Vec<BigUint>> = Vec::new();
    let mut n = BigUint::zero();
    for stage in start..=hmax {
        let s = &s_entries[(stage - 1) as usize];
        let max_fin =
            s.coords().iter().filter_map(|c| c.finite()).max().unwrap_or(0);
        let floor = if let Some(prev) = entries.last() {
            let img = apply_big(d.map_from(stage - 1).expect("within horizon"), prev);
            (big_max(&img) * 2u32 + 1u32).max(&n + 1u32)
        } else {
            BigUint::from(max_fin) + 1u32
        };
        n = floor.max(BigUint::from(max_fin) + 1u32);
        let term = big_basis_term(s, &n);
        if let Some(prev) = entries.last() {
            let img = apply_big(d.map_from(stage - 1).expect("within horizon"), prev);
            debug_assert!(
                img.iter().zip(&term).all(|(x, y)| x <= y),
                "selection keeps the diagonal rapidly increasing"
            );
        }
        entries.push(term);
    }
    RapidRep { start, entries, from_source: false }
}

/// Probe the defining properties of a rapid representative at the horizon:
/// entries rapidly increasing, each compactly contained in the source's
/// entry at its stage, and every basis witness of the source (up to
/// `depth`) absorbed by some entry.
pub fn rapid_rep_checks(
    d: &CuDiagram,
    rep: &RapidRep,
    a: &Thread,
    horizon: u32,
    depth: u32,
) -> bool {
    let hmax = d
        .cap_stage(d.cap_stage(horizon).max(a.last_explicit()))
        .min(rep.last_stage());
    let s_entries = a.expand(d, hmax).expect("thread fits the diagram");

    for stage in rep.start()..hmax {
        let cur = rep.entry(stage).unwrap();
        let next = rep.entry(stage + 1).unwrap();
        let img = apply_big(d.map_from(stage).expect("within horizon"), cur);
        if !img.iter().zip(next).all(|(x, y)| x <= y) {
            return false;
        }
    }
    for stage in rep.start()..=hmax {
        let cur = rep.entry(stage).unwrap();
        let s = &s_entries[(stage - 1) as usize];
        let ok = cur.iter().zip(s.coords()).all(|(x, c)| match c {
            ExtNat::Fin(f) => *x <= BigUint::from(*f),
            ExtNat::Inf => true,
        });
        if !ok {
            return false;
        }
    }
    for i in a.start()..=a.last_explicit() {
        let v = &s_entries[(i - 1) as usize];
        for nd in 1..=depth {
            let mut img = big_basis_term(v, &BigUint::from(nd));
            let mut found = false;
            for stage in i..=hmax {
                if stage > i {
                    img = apply_big(d.map_from(stage - 1).expect("within horizon"), &img);
                }
                if let Some(r) = rep.entry(stage) {
                    if img.iter().zip(r).all(|(x, y)| x <= y) {
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                return false;
            }
        }
    }
    true
}

/// Compact containment of classes: `a << b` iff `a` lies below one of the
/// compact classes furnished by the rapid entries of `b`.
pub fn thread_way_below(d: &CuDiagram, a: &Thread, b: &Thread, horizon: u32) -> Tri {
    if a.is_compact_class(d) {
        // For a compact class, `a << b` iff `a <= b`.
        return thread_leq(d, a, b, horizon);
    }
    // Compact containment implies the order, so a refuted order refutes it.
    if let Tri::NotLe(kind) = thread_leq(d, a, b, horizon) {
        return Tri::NotLe(kind);
    }
    let rep = rapid_representative(d, b, horizon);
    let hmax = d.cap_stage(horizon);
    for stage in rep.start()..=rep.last_stage() {
        if let Some(z) = rep.entry_as_vector(stage) {
            // Deep entries grow super-exponentially; skip candidates whose
            // expansion out to the horizon would not stay representable.
            // (Skipping shortens the search, it never affects soundness.)
            let max_coord = z.coords().iter().filter_map(|c| c.finite()).max().unwrap_or(0);
            let growth = d
                .stationary_map()
                .map(|m| m.rows().map(|r| r.iter().sum::<u128>()).max().unwrap_or(1))
                .unwrap_or(1)
                .max(2);
            let budget = (hmax.saturating_sub(stage)) as f64;
            if (max_coord.max(1) as f64).log2() + budget * (growth as f64).log2() > 120.0 {
                continue;
            }
            if let Ok(zt) = Thread::image(d, stage, z) {
                if thread_leq(d, a, &zt, horizon) == Tri::Le {
                    return Tri::Le;
                }
            }
        }
    }
    if let Some(kind) = never_below_compacts(d, a, b, horizon) {
        return Tri::NotLe(kind);
    }
    Tri::Unknown(horizon)
}

/// A functional unbounded on `a`'s witnesses is finite on every compact
/// class, and `a << b` would put `a` below one of them.
fn never_below_compacts(
    d: &CuDiagram,
    a: &Thread,
    b: &Thread,
    horizon: u32,
) -> Option<RefutationKind> {
    let m = d.stationary_map()?;
    let hmax = d.cap_stage(horizon).max(a.last_explicit()).max(b.last_explicit());
    let j0 = d.tail_start().max(a.last_explicit()).max(b.last_explicit());
    if j0 > hmax {
        return None;
    }
    let va = a.entry(d, j0).expect("within range");
    let vb = b.entry(d, j0).expect("within range");
    let v_inf = va.inf_support();
    if v_inf.is_empty() {
        return None;
    }
    let za = orbit_zero_set(m, &va);
    let zb = orbit_zero_set(m, &vb);
    let shared: Vec<usize> = za.iter().copied().filter(|c| zb.contains(c)).collect();
    let c_set: Vec<usize> = (0..m.in_dim()).filter(|c| !shared.contains(c)).collect();
    let sub = SubMatrix::from_map(m, &c_set);
    let inf_locals: Vec<usize> =
        (0..c_set.len()).filter(|&l| v_inf.contains(&c_set[l])).collect();
    if inf_locals.is_empty() {
        return None;
    }
    // Compact classes have finite entries everywhere: no zero-mass
    // constraint on the functional.
    if inf_mass_functional(&sub, &inf_locals, &[]) {
        Some(if shared.is_empty() { RefutationKind::Perron } else { RefutationKind::Deficit })
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Sequences of threads and their suprema
// ---------------------------------------------------------------------------

/// An increasing sequence of threads with a finite certificate: explicit
/// lead terms, then a constant, a seed ramp (entries linear in the index),
/// or the family of rapid entries of a source thread.
pub struct ThreadSeq {
    lead: Vec<Thread>,
    tail: SeqTail,
}

pub enum SeqTail {
    Const(Thread),
    /// Term at tail offset `m >= 1`: the prefix thread with entries
    /// `base[l] + m * dir[l]`.
    Ramp { start: u32, base: Vec<ExtNatVector>, dir: Vec<Vec<u128>> },
    /// Term at tail offset `m`: the compact class of the rapid entry of
    /// `source` at its `m`-th stage.
    RapidFamily { source: Thread },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqError {
    NotIncreasing { index: u32 },
    Undecided { index: u32, horizon: u32 },
    PostVerify { index: u32 },
    BadShape(String),
}

impl core::fmt::Display for SeqError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SeqError::NotIncreasing { index } => {
                write!(f, "sequence is not increasing at index {index}")
            }
            SeqError::Undecided { index, horizon } => {
                write!(f, "monotonicity at index {index} undecided at horizon {horizon}")
            }
            SeqError::PostVerify { index } => {
                write!(f, "term {index} is not certified below the computed supremum")
            }
            SeqError::BadShape(s) => write!(f, "{s}"),
        }
    }
}

impl ThreadSeq {
    pub fn constant(t: Thread) -> Self {
        ThreadSeq { lead: Vec::new(), tail: SeqTail::Const(t) }
    }

    /// A finite list of terms, the last repeating forever.
    pub fn stabilizing(mut terms: Vec<Thread>) -> Self {
        assert!(!terms.is_empty());
        let last = terms.pop().unwrap();
        ThreadSeq { lead: terms, tail: SeqTail::Const(last) }
    }

    pub fn ramp(
        d: &CuDiagram,
        start: u32,
        base: Vec<ExtNatVector>,
        dir: Vec<Vec<u128>>,
    ) -> Result<Self, SeqError> {
        if base.len() != dir.len() || base.is_empty() {
            return Err(SeqError::BadShape(String::from(
                "ramp needs matching base and direction entries",
            )));
        }
        for (off, (b, dr)) in base.iter().zip(&dir).enumerate() {
            let dim = d
                .stage_dim(start + off as u32)
                .map_err(|e| SeqError::BadShape(format!("{e}")))?;
            if b.dim() != dim || dr.len() != dim {
                return Err(SeqError::BadShape(format!(
                    "ramp entry at stage {} has the wrong dimension",
                    start + off as u32
                )));
            }
        }
        Ok(ThreadSeq { lead: Vec::new(), tail: SeqTail::Ramp { start, base, dir } })
    }

    pub fn rapid_family(source: Thread) -> Self {
        ThreadSeq { lead: Vec::new(), tail: SeqTail::RapidFamily { source } }
    }

    pub fn lead_len(&self) -> u32 {
        self.lead.len() as u32
    }

    /// Termwise sum. Constant and ramp tails are closed under sums (the
    /// result of adding two index-linear families is index-linear); rapid
    /// families are not and are refused.
    pub fn sum(&self, d: &CuDiagram, other: &ThreadSeq) -> Result<ThreadSeq, SeqError> {
        if matches!(self.tail, SeqTail::RapidFamily { .. })
            || matches!(other.tail, SeqTail::RapidFamily { .. })
        {
            return Err(SeqError::BadShape(String::from(
                "sums of rapid families have no closed form",
            )));
        }
        let lead_len = self.lead.len().max(other.lead.len()) as u32;
        let mut lead = Vec::with_capacity(lead_len as usize);
        for n in 1..=lead_len {
            let t = self
                .term(d, n)?
                .add(d, &other.term(d, n)?)
                .map_err(|e| SeqError::BadShape(format!("sum term {n}: {e}")))?;
            lead.push(t);
        }
        if matches!(self.tail, SeqTail::Const(_)) && matches!(other.tail, SeqTail::Const(_)) {
            let t = self
                .term(d, lead_len + 1)?
                .add(d, &other.term(d, lead_len + 1)?)
                .map_err(|e| SeqError::BadShape(format!("sum tail: {e}")))?;
            return Ok(ThreadSeq { lead, tail: SeqTail::Const(t) });
        }
        // At least one ramp: beyond the lead the termwise sum is linear in
        // the index. Recover base and direction from two consecutive terms
        // and verify the linearity on a third.
        let term_at = |n: u32| -> Result<Thread, SeqError> {
            self.term(d, lead_len + n)?
                .add(d, &other.term(d, lead_len + n)?)
                .map_err(|e| SeqError::BadShape(format!("sum tail term {n}: {e}")))
        };
        let t1 = term_at(1)?;
        let t2 = term_at(2)?;
        let t3 = term_at(3)?;
        let start = t1.start().min(t2.start()).min(t3.start());
        let last = t1.last_explicit().max(t2.last_explicit()).max(t3.last_explicit());
        let mut base = Vec::new();
        let mut dir = Vec::new();
        for stage in start..=last {
            let e1 = t1.entry(d, stage).map_err(|e| SeqError::BadShape(format!("{e}")))?;
            let e2 = t2.entry(d, stage).map_err(|e| SeqError::BadShape(format!("{e}")))?;
            let e3 = t3.entry(d, stage).map_err(|e| SeqError::BadShape(format!("{e}")))?;
            let dim = e1.dim();
            let mut b = Vec::with_capacity(dim);
            let mut dr = Vec::with_capacity(dim);
            for c in 0..dim {
                match (e1.coord(c), e2.coord(c), e3.coord(c)) {
                    (ExtNat::Fin(a1), ExtNat::Fin(a2), ExtNat::Fin(a3)) => {
                        let step = a2.checked_sub(a1).ok_or_else(|| {
                            SeqError::BadShape(String::from("termwise sum is not increasing"))
                        })?;
                        if a3 != a2 + step || a1 < step {
                            return Err(SeqError::BadShape(String::from(
                                "termwise sum is not index-linear",
                            )));
                        }
                        b.push(ExtNat::Fin(a1 - step));
                        dr.push(step);
                    }
                    (ExtNat::Inf, ExtNat::Inf, ExtNat::Inf) => {
                        b.push(ExtNat::Inf);
                        dr.push(0);
                    }
                    _ => {
                        return Err(SeqError::BadShape(String::from(
                            "termwise sum mixes finite and infinite stages",
                        )))
                    }
                }
            }
            base.push(ExtNatVector::new(b));
            dir.push(dr);
        }
        Ok(ThreadSeq { lead, tail: SeqTail::Ramp { start, base, dir } })
    }

    /// Term at index `n >= 1`.
    pub fn term(&self, d: &CuDiagram, n: u32) -> Result<Thread, SeqError> {
        let len = self.lead.len() as u32;
        if n <= len {
            return Ok(self.lead[(n - 1) as usize].clone());
        }
        let m = n - len;
        match &self.tail {
            SeqTail::Const(t) => Ok(t.clone()),
            SeqTail::Ramp { start, base, dir } => {
                let entries: Vec<ExtNatVector> = base
                    .iter()
                    .zip(dir)
                    .map(|(b, dr)| {
                        ExtNatVector::new(
                            b.coords()
                                .iter()
                                .zip(dr)
                                .map(|(c, step)| c.add(ExtNat::Fin(*step * m as u128)))
                                .collect(),
                        )
                    })
                    .collect();
                Thread::prefix(d, *start, entries)
                    .map_err(|e| SeqError::BadShape(format!("ramp term {n}: {e}")))
            }
            SeqTail::RapidFamily { source } => {
                let stage = d.cap_stage(source.start() + m - 1);
                let rep = rapid_representative(d, source, stage);
                let v = rep
                    .entry_as_vector(stage)
                    .ok_or_else(|| SeqError::BadShape(format!("rapid entry {n} overflows")))?;
                Thread::image(d, stage, v).map_err(|e| SeqError::BadShape(format!("{e}")))
            }
        }
    }

    /// The supremum descriptor declared by the certificate.
    fn sup_descriptor(&self, d: &CuDiagram) -> Result<Thread, SeqError> {
        match &self.tail {
            SeqTail::Const(t) => Ok(t.clone()),
            SeqTail::Ramp { start, base, dir } => {
                let entries: Vec<ExtNatVector> = base
                    .iter()
                    .zip(dir)
                    .map(|(b, dr)| {
                        ExtNatVector::new(
                            b.coords()
                                .iter()
                                .zip(dr)
                                .map(|(c, step)| if *step > 0 { ExtNat::Inf } else { *c })
                                .collect(),
                        )
                    })
                    .collect();
                Thread::prefix(d, *start, entries)
                    .map_err(|e| SeqError::BadShape(format!("ramp supremum: {e}")))
            }
            SeqTail::RapidFamily { source } => Ok(source.clone()),
        }
    }
}

/// Leading terms probed by `limit_sup`.
const SEQ_PROBES: u32 = 4;

/// Supremum of an increasing certified sequence of threads: the finitely
/// described thread represented by the diagonal of the terms' rapid
/// presentations, post-verified against the probed terms.
pub fn limit_sup(d: &CuDiagram, seq: &ThreadSeq, horizon: u32) -> Result<Thread, SeqError> {
    let probes = SEQ_PROBES + seq.lead.len() as u32;
    for n in 1..=probes {
        let a = seq.term(d, n)?;
        let b = seq.term(d, n + 1)?;
        match thread_leq(d, &a, &b, horizon) {
            Tri::Le => {}
            Tri::NotLe(_) => return Err(SeqError::NotIncreasing { index: n }),
            Tri::Unknown(h) => return Err(SeqError::Undecided { index: n, horizon: h }),
        }
    }
    let sup = seq.sup_descriptor(d)?.normalized(d);
    for n in 1..=probes + 1 {
        let t = seq.term(d, n)?;
        if thread_leq(d, &t, &sup, horizon) != Tri::Le {
            return Err(SeqError::PostVerify { index: n });
        }
    }
    if let SeqTail::RapidFamily { source } = &seq.tail {
        let rep = rapid_representative(d, source, horizon);
        if !rapid_rep_checks(d, &rep, source, horizon, 8) {
            return Err(SeqError::PostVerify { index: 0 });
        }
    }
    Ok(sup)
}

// ---------------------------------------------------------------------------
// The universal property
// ---------------------------------------------------------------------------

/// A compatible family of maps from the stages into a target instance:
/// `psi(stage, v)` with `psi(stage + 1, map(v)) = psi(stage, v)`.
pub type StageMaps<'a, T> = &'a dyn Fn(u32, &ExtNatVector) -> T;

/// The induced map on the limit. By compatibility the images of a thread's
/// entries are constant from the last explicit stage on, so the supremum of
/// the image sequence is that constant.
pub fn mediating_map<T: CuInstance>(
    d: &CuDiagram,
    target: &T,
    psi: StageMaps<'_, T::Elem>,
    a: &Thread,
    _horizon: u32,
) -> T::Elem {
    let m = a.last_explicit();
    let val = psi(m, &a.entry(d, m).expect("explicit entry"));
    for j in a.start()..m {
        let earlier = psi(j, &a.entry(d, j).expect("explicit entry"));
        debug_assert!(
            target.leq(&earlier, &val),
            "stage images must increase toward the tail value"
        );
    }
    val
}

/// Check the defining properties of the induced map on sampled data. The
/// compatibility of the stage maps is the first report; everything else
/// presumes it.
pub fn universal_property_check<T: CuInstance>(
    d: &CuDiagram,
    target: &T,
    psi: StageMaps<'_, T::Elem>,
    samples: u32,
    horizon: u32,
    seed: u64,
) -> Vec<LawReport> {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_ffee);

    let mut compat = LawReport::new("psi-compatibility");
    let mut commutes = LawReport::new("commutes-with-embeddings");
    let mut welldef = LawReport::new("well-defined-on-equivalents");
    let mut mono = LawReport::new("monotone");
    let mut additive = LawReport::new("additive");
    let mut sup_pres = LawReport::new("sup-preserving");
    let mut wb_pres = LawReport::new("way-below-preserving");

    let stage_cap = d.cap_stage(6).max(1);
    let sample_vector = |rng: &mut rand_chacha::ChaCha8Rng, dim: usize| -> ExtNatVector {
        ExtNatVector::new(
            (0..dim)
                .map(|_| match rng.gen_range(0..10u32) {
                    0 => ExtNat::Inf,
                    r => ExtNat::Fin((r as u128 - 1) % 6),
                })
                .collect(),
        )
    };
    let sample_thread = |rng: &mut rand_chacha::ChaCha8Rng| -> Thread {
        let start = rng.gen_range(1..=stage_cap);
        let seed_v = sample_vector(rng, d.stage_dim(start).unwrap());
        Thread::image(d, start, seed_v).unwrap()
    };

    for _ in 0..samples {
        let i = rng.gen_range(1..=stage_cap);
        let v = sample_vector(&mut rng, d.stage_dim(i).unwrap());

        // Compatibility: psi(i+1, map(v)) = psi(i, v).
        if let Ok(map) = d.map_from(i) {
            let lhs = psi(i + 1, &map.apply(&v).unwrap());
            let rhs = psi(i, &v);
            if lhs == rhs {
                compat.pass();
            } else {
                compat.fail(format!("psi({i},{v}) = {rhs:?} but psi({},map(v)) = {lhs:?}", i + 1));
            }
        }

        // Commutativity with the embeddings.
        let t = Thread::image(d, i, v.clone()).unwrap();
        let med = mediating_map(d, target, psi, &t, horizon);
        let direct = psi(i, &v);
        if med == direct {
            commutes.pass();
        } else {
            commutes.fail(format!("mediating(embed({i},{v})) = {med:?} but psi = {direct:?}"));
        }

        // Well-definedness: the shifted presentation and a padded prefix
        // are equivalent threads and must map to the same value.
        if let Ok(map) = d.map_from(i) {
            let img = map.apply(&v).unwrap();
            let shifted = Thread::image(d, i + 1, img.clone()).unwrap();
            let padded = Thread::prefix(d, i, alloc::vec![v.clone(), img]).unwrap();
            let m1 = mediating_map(d, target, psi, &shifted, horizon);
            let m2 = mediating_map(d, target, psi, &padded, horizon);
            if m1 == med && m2 == med {
                welldef.pass();
            } else {
                welldef.fail(format!(
                    "equivalent presentations of embed({i},{v}) map to {med:?}, {m1:?}, {m2:?}"
                ));
            }
        }

        // Monotonicity on certified pairs.
        let a = sample_thread(&mut rng);
        let r = sample_thread(&mut rng);
        let b = a.add(d, &r).unwrap();
        if thread_leq(d, &a, &b, horizon) == Tri::Le {
            let ma = mediating_map(d, target, psi, &a, horizon);
            let mb = mediating_map(d, target, psi, &b, horizon);
            if target.leq(&ma, &mb) {
                mono.pass();
            } else {
                mono.fail(format!(
                    "{} <= {} but images are not ordered",
                    a.encode(),
                    b.encode()
                ));
            }
        }

        // Additivity.
        let lhs = mediating_map(d, target, psi, &b, horizon);
        let rhs = target.add(
            &mediating_map(d, target, psi, &a, horizon),
            &mediating_map(d, target, psi, &r, horizon),
        );
        if lhs == rhs {
            additive.pass();
        } else {
            additive.fail(format!(
                "mediating({} + {}) differs from the sum of the images",
                a.encode(),
                r.encode()
            ));
        }

        // Supremum preservation on a seed ramp or a stabilizing sequence.
        let start = rng.gen_range(1..=stage_cap);
        let dim = d.stage_dim(start).unwrap();
        let base = sample_vector(&mut rng, dim).finite_part();
        let dir: Vec<u128> = (0..dim).map(|_| rng.gen_range(0..=1) as u128).collect();
        if dir.iter().any(|&x| x > 0) {
            let seq =
                ThreadSeq::ramp(d, start, alloc::vec![base.clone()], alloc::vec![dir]).unwrap();
            match limit_sup(d, &seq, horizon) {
                Ok(sup) => {
                    let msup = mediating_map(d, target, psi, &sup, horizon);
                    let mut ok = true;
                    for n in 1..=4 {
                        let tn = seq.term(d, n).unwrap();
                        let mtn = mediating_map(d, target, psi, &tn, horizon);
                        if !target.leq(&mtn, &msup) {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        sup_pres.pass();
                    } else {
                        sup_pres.fail(String::from(
                            "image of a ramp supremum fails to dominate a term image",
                        ));
                    }
                }
                Err(e) => sup_pres.fail(format!("ramp supremum rejected: {e}")),
            }
        } else {
            let t1 = Thread::image(d, start, base.clone()).unwrap();
            let seq = ThreadSeq::stabilizing(alloc::vec![t1.clone(), t1]);
            match limit_sup(d, &seq, horizon) {
                Ok(sup) => {
                    let msup = mediating_map(d, target, psi, &sup, horizon);
                    let mlast =
                        mediating_map(d, target, psi, &seq.term(d, 2).unwrap(), horizon);
                    if msup == mlast {
                        sup_pres.pass();
                    } else {
                        sup_pres.fail(String::from(
                            "stabilizing supremum image differs from the last term image",
                        ));
                    }
                }
                Err(e) => sup_pres.fail(format!("stabilizing supremum rejected: {e}")),
            }
        }

        // Compact-containment preservation: half of y's entry embeds as a
        // compact class way below y (strictly below it wherever nonzero).
        let y = sample_thread(&mut rng);
        let jstage = y.start();
        let ye = y.entry(d, jstage).unwrap();
        let w = ExtNatVector::new(
            ye.coords()
                .iter()
                .map(|c| match c {
                    ExtNat::Fin(f) => ExtNat::Fin(f / 2),
                    ExtNat::Inf => ExtNat::Fin(rng.gen_range(0..=4) as u128),
                })
                .collect(),
        );
        let x = Thread::image(d, jstage, w).unwrap();
        if thread_way_below(d, &x, &y, horizon) == Tri::Le {
            let mx = mediating_map(d, target, psi, &x, horizon);
            let my = mediating_map(d, target, psi, &y, horizon);
            if target.way_below(&mx, &my) {
                wb_pres.pass();
            } else {
                wb_pres.fail(format!(
                    "x << y for x={}, y={} but the images are not compactly contained",
                    x.encode(),
                    y.encode()
                ));
            }
        }
    }

    alloc::vec![compat, commutes, welldef, mono, additive, sup_pres, wb_pres]
}
