use crate::diagnostics::{DiagnosticsRecord, RecordBuilder};
use crate::error::{Error, Result};
use crate::field::FlowState;
use crate::io::SimConfig;

use super::integrator::{cfl_dt, step};
use super::rhs::Model;

/// Receives the output stream of a run.
pub trait RunSink {
    fn record(&mut self, record: &DiagnosticsRecord) -> Result<()>;
    fn snapshot(&mut self, state: &FlowState) -> Result<()>;
}

/// Keeps everything in memory.
#[derive(Debug, Default)]
pub struct MemorySink {
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<FlowState>,
}

impl RunSink for MemorySink {
    fn record(&mut self, record: &DiagnosticsRecord) -> Result<()> {
        self.records.push(*record);
        Ok(())
    }

    fn snapshot(&mut self, state: &FlowState) -> Result<()> {
        self.snapshots.push(state.clone());
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub final_state: FlowState,
    pub steps: u64,
    pub records: Vec<DiagnosticsRecord>,
}

/// Builds the configured initial condition and integrates it to `t_end`.
pub fn run(config: &SimConfig, sink: &mut dyn RunSink) -> Result<RunOutcome> {
    let state = config.ic.build(config.grid, &config.eos, config.seed)?;
    run_from(config, state, sink)
}

/// Integrates `state` from its own time to `t_end`.
///
/// Steps are shortened to land exactly on snapshot times and on `t_end`.
/// Records are emitted at step 0, every `record_every` steps and after the
/// last step; step numbers count from the start of this call.
pub fn run_from(config: &SimConfig, state: FlowState, sink: &mut dyn RunSink) -> Result<RunOutcome> {
    let model = config.model()?;
    if *state.grid() != config.grid {
        return Err(Error::Dimension(format!(
            "state grid {:?} does not match configured grid {:?}",
            state.grid(),
            config.grid
        )));
    }
    state
        .check_finite()
        .and_then(|_| state.check_positivity(model.positivity_floor))
        .map_err(|e| at_step(e, 0, state.t))?;

    let t_end = config.integrator.t_end;
    if state.t > t_end {
        return Err(Error::Parameter(format!(
            "state time {} is past t_end = {t_end}",
            state.t
        )));
    }
    let mut pending: Vec<f64> = config
        .output
        .snapshot_times
        .iter()
        .copied()
        .filter(|&ts| ts >= state.t && ts <= t_end)
        .collect();
    pending.reverse();

    let mut builder = RecordBuilder::new(config.analysis);
    let mut records = Vec::new();
    let mut emit = |builder: &mut RecordBuilder,
                    model: &Model,
                    k: u64,
                    dt: f64,
                    s: &FlowState,
                    prev: Option<&FlowState>,
                    sink: &mut dyn RunSink|
     -> Result<()> {
        let rec = builder
            .record(model, k, dt, s, prev)
            .map_err(|e| at_step(e, k, s.t))?;
        sink.record(&rec)?;
        records.push(rec);
        Ok(())
    };

    if pending.last() == Some(&state.t) {
        pending.pop();
        sink.snapshot(&state)?;
    }
    emit(&mut builder, &model, 0, 0.0, &state, None, sink)?;

    let every = config.output.record_every.max(1) as u64;
    let mut current = state;
    let mut k: u64 = 0;
    while current.t < t_end {
        let target = pending.last().copied().unwrap_or(t_end);
        let mut dt = cfl_dt(&model, &current, &config.integrator).map_err(|e| at_step(e, k + 1, current.t))?;
        let lands = current.t + dt >= target;
        if lands {
            dt = target - current.t;
        }
        let mut next = step(&model, &current, dt, config.integrator.method, None)
            .map_err(|e| at_step(e, k + 1, current.t))?;
        if lands {
            next.t = target;
        }
        k += 1;
        if lands && pending.last() == Some(&target) {
            pending.pop();
            sink.snapshot(&next)?;
        }
        let last = next.t >= t_end;
        if k % every == 0 || last {
            emit(&mut builder, &model, k, dt, &next, Some(&current), sink)?;
        }
        current = next;
    }

    Ok(RunOutcome {
        final_state: current,
        steps: k,
        records,
    })
}

fn at_step(e: Error, step: u64, t: f64) -> Error {
    match e {
        Error::AtStep { .. } => e,
        other => Error::AtStep {
            step: step as usize,
            t,
            source: Box::new(other),
        },
    }
}
