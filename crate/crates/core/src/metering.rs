//! Per-session accounting of homomorphic primitives, keyed by protocol phase.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

/// Protocol phase a homomorphic operation is attributed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Indicators,
    PartialSums,
    PositionIndicators,
    Gather,
    Count,
    Precheck,
    Maintenance,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Indicators => "indicators",
            Phase::PartialSums => "partial_sums",
            Phase::PositionIndicators => "position_indicators",
            Phase::Gather => "gather",
            Phase::Count => "count",
            Phase::Precheck => "precheck",
            Phase::Maintenance => "maintenance",
        }
    }

    pub const ALL: [Phase; 7] = [
        Phase::Indicators,
        Phase::PartialSums,
        Phase::PositionIndicators,
        Phase::Gather,
        Phase::Count,
        Phase::Precheck,
        Phase::Maintenance,
    ];
}

/// One backend primitive invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HomOp {
    Enc,
    Add,
    Mul,
    PlainAdd,
    PlainMul,
    Inv,
}

impl HomOp {
    pub fn name(self) -> &'static str {
        match self {
            HomOp::Enc => "enc",
            HomOp::Add => "add",
            HomOp::Mul => "mul",
            HomOp::PlainAdd => "plain_add",
            HomOp::PlainMul => "plain_mul",
            HomOp::Inv => "inv",
        }
    }

    pub const ALL: [HomOp; 6] = [
        HomOp::Enc,
        HomOp::Add,
        HomOp::Mul,
        HomOp::PlainAdd,
        HomOp::PlainMul,
        HomOp::Inv,
    ];
}

/// Tally of homomorphic operations for one session. Counts only grow.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    counts: BTreeMap<(Phase, HomOp), u64>,
    /// Times the tracked noise bound crossed the safety threshold.
    pub noise_advisories: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, phase: Phase, op: HomOp) {
        *self.counts.entry((phase, op)).or_insert(0) += 1;
    }

    pub fn get(&self, phase: Phase, op: HomOp) -> u64 {
        self.counts.get(&(phase, op)).copied().unwrap_or(0)
    }

    pub fn phase_total(&self, phase: Phase) -> u64 {
        HomOp::ALL.iter().map(|&op| self.get(phase, op)).sum()
    }

    pub fn op_total(&self, op: HomOp) -> u64 {
        Phase::ALL.iter().map(|&ph| self.get(ph, op)).sum()
    }

    pub fn grand_total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn merge(&mut self, other: &OpCounter) {
        for (&key, &v) in &other.counts {
            *self.counts.entry(key).or_insert(0) += v;
        }
        self.noise_advisories += other.noise_advisories;
    }

    /// Nested `{phase: {op: count}}` view for JSON reports (only phases that
    /// saw work appear).
    pub fn to_nested(&self) -> BTreeMap<String, BTreeMap<String, u64>> {
        let mut out: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (&(phase, op), &v) in &self.counts {
            out.entry(phase.name().to_string())
                .or_default()
                .insert(op.name().to_string(), v);
        }
        out
    }
}

struct MeterState {
    counter: OpCounter,
    phase: Phase,
}

/// Cheaply cloneable handle through which backend evaluators report events.
/// A disabled meter drops everything; sessions are single-owner so the
/// interior cell is never contended.
#[derive(Clone)]
pub struct Meter {
    inner: Option<Rc<RefCell<MeterState>>>,
}

impl Default for Meter {
    fn default() -> Self {
        Meter::disabled()
    }
}

impl Meter {
    pub fn new() -> Self {
        Meter {
            inner: Some(Rc::new(RefCell::new(MeterState {
                counter: OpCounter::new(),
                phase: Phase::Maintenance,
            }))),
        }
    }

    pub fn disabled() -> Self {
        Meter { inner: None }
    }

    pub fn enter(&self, phase: Phase) {
        if let Some(cell) = &self.inner {
            cell.borrow_mut().phase = phase;
        }
    }

    pub fn record(&self, op: HomOp) {
        if let Some(cell) = &self.inner {
            let mut state = cell.borrow_mut();
            let phase = state.phase;
            state.counter.record(phase, op);
        }
    }

    pub fn advisory(&self) {
        if let Some(cell) = &self.inner {
            cell.borrow_mut().counter.noise_advisories += 1;
        }
    }

    pub fn snapshot(&self) -> OpCounter {
        self.inner
            .as_ref()
            .map(|c| c.borrow().counter.clone())
            .unwrap_or_default()
    }
}
