//! Decider pipeline: halt-check each machine by simulation, then run the
//! configured deciders in order until one proves non-halting. Machines are
//! processed in parallel; the output order always matches the input order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::backward::{decide_backward, BackwardDecision, BackwardParams};
use crate::bouncers::{decide_bouncers, BouncerCertificate, BouncersDecision, BouncersParams};
use crate::decision::{Decision, Verdict, Witness};
use crate::far::{decide_far_direct, decide_far_mitm, FarCertificate, FarDecision, ScanDirection};
use crate::loops::{decide_cyclers, decide_translated_cyclers, CyclersParams, LoopDecision};
use crate::machine::{state_letter, TransitionTable};
use crate::segment::{decide_halting_segment, SegmentDecision};
use crate::tape::{simulate, SimulationOutcome};

/// One decider with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum DeciderSpec {
    Cyclers { time_limit: u64, max_configs: usize },
    TranslatedCyclers { time_limit: u64 },
    Backward { max_depth: u64, node_budget: usize },
    HaltingSegment { max_segment: usize, node_budget: usize },
    FarDirect { max_dfa: usize },
    FarMitm { max_dfa: usize },
    Bouncers { step_limit: u64, macro_limit: u64, max_formula_tapes: usize },
}

impl DeciderSpec {
    pub fn name(&self) -> &'static str {
        match self {
            DeciderSpec::Cyclers { .. } => "cyclers",
            DeciderSpec::TranslatedCyclers { .. } => "translated-cyclers",
            DeciderSpec::Backward { .. } => "backward",
            DeciderSpec::HaltingSegment { .. } => "halting-segment",
            DeciderSpec::FarDirect { .. } => "far-direct",
            DeciderSpec::FarMitm { .. } => "far-mitm",
            DeciderSpec::Bouncers { .. } => "bouncers",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Steps of plain simulation used to catch halting machines first.
    pub halt_check_steps: u64,
    pub deciders: Vec<DeciderSpec>,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl Default for PipelineConfig {
    fn default() -> PipelineConfig {
        PipelineConfig {
            halt_check_steps: 1_000_000,
            deciders: default_deciders(),
            threads: 0,
        }
    }
}

/// The default pipeline: cheapest first, in the order the methods were
/// introduced.
pub fn default_deciders() -> Vec<DeciderSpec> {
    vec![
        DeciderSpec::Cyclers { time_limit: 1000, max_configs: 1_000_000 },
        DeciderSpec::TranslatedCyclers { time_limit: 1000 },
        DeciderSpec::Backward { max_depth: 50, node_budget: 100_000 },
        DeciderSpec::HaltingSegment { max_segment: 8, node_budget: 1_000_000 },
        DeciderSpec::FarDirect { max_dfa: 4 },
        DeciderSpec::FarMitm { max_dfa: 6 },
        DeciderSpec::Bouncers { step_limit: 10_000, macro_limit: 1000, max_formula_tapes: 64 },
    ]
}

/// A machine's decision plus any certificate produced alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineReport {
    pub decision: Decision,
    pub far_certificate: Option<FarCertificate>,
    pub bouncer_certificate: Option<BouncerCertificate>,
}

/// Run the pipeline over a batch of machines. Individual machines never
/// abort the batch; the result vector is index-aligned with the input.
pub fn run_pipeline(machines: &[TransitionTable], config: &PipelineConfig) -> Vec<MachineReport> {
    let run = || machines.par_iter().map(|m| decide_machine(m, config)).collect();
    if config.threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool")
            .install(run)
    }
}

/// Decide a single machine: simulate first, then the decider cascade.
pub fn decide_machine(table: &TransitionTable, config: &PipelineConfig) -> MachineReport {
    let text = table.to_string();
    let mut report = MachineReport {
        decision: Decision::unknown(&text),
        far_certificate: None,
        bouncer_certificate: None,
    };
    if let SimulationOutcome::Halted(halt) = simulate(table, config.halt_check_steps) {
        report.decision = Decision::halted(&text, halt.step);
        return report;
    }
    for spec in &config.deciders {
        match spec {
            DeciderSpec::Cyclers { time_limit, max_configs } => {
                let params = CyclersParams { time_limit: *time_limit, max_configs: *max_configs };
                match decide_cyclers(table, params) {
                    LoopDecision::Cycle { i, j } => {
                        report.decision = Decision::nonhalt(&text, spec.name(), Witness::Cycle { i, j });
                        return report;
                    }
                    LoopDecision::Halted(halt) => {
                        report.decision = Decision::halted(&text, halt.step);
                        return report;
                    }
                    _ => {}
                }
            }
            DeciderSpec::TranslatedCyclers { time_limit } => {
                match decide_translated_cyclers(table, *time_limit) {
                    LoopDecision::TranslatedCycle { side, t1, t2, distance } => {
                        report.decision = Decision::nonhalt(
                            &text,
                            spec.name(),
                            Witness::TranslatedCycle { side, t1, t2, distance },
                        );
                        return report;
                    }
                    LoopDecision::Halted(halt) => {
                        report.decision = Decision::halted(&text, halt.step);
                        return report;
                    }
                    _ => {}
                }
            }
            DeciderSpec::Backward { max_depth, node_budget } => {
                let params = BackwardParams { max_depth: *max_depth, node_budget: *node_budget };
                if let BackwardDecision::NonHalt { max_contradiction_depth } = decide_backward(table, params) {
                    // The backward argument additionally needs the machine to
                    // run max_depth forward steps without halting.
                    match simulate(table, *max_depth) {
                        SimulationOutcome::Halted(halt) => {
                            report.decision = Decision::halted(&text, halt.step);
                            return report;
                        }
                        SimulationOutcome::RunningAtLimit(_) => {
                            report.decision = Decision::nonhalt(
                                &text,
                                spec.name(),
                                Witness::Backward {
                                    max_contradiction_depth,
                                    forward_steps: *max_depth,
                                },
                            );
                            return report;
                        }
                    }
                }
            }
            DeciderSpec::HaltingSegment { max_segment, node_budget } => {
                for n in 2..=*max_segment {
                    if let SegmentDecision::NonHalt { n, uncovered } =
                        decide_halting_segment(table, n, *node_budget)
                    {
                        let uncovered = uncovered
                            .into_iter()
                            .map(|((f, r), p)| (format!("{}{}", state_letter(f), r), p))
                            .collect();
                        report.decision = Decision::nonhalt(
                            &text,
                            spec.name(),
                            Witness::HaltingSegment { n, uncovered },
                        );
                        return report;
                    }
                }
            }
            DeciderSpec::FarDirect { max_dfa } => {
                'far: for n in 1..=*max_dfa {
                    for left_to_right in [true, false] {
                        if let FarDecision::NonHalt(cert) = decide_far_direct(table, n, left_to_right) {
                            let direction = match cert.direction {
                                ScanDirection::LeftToRight => "left-to-right",
                                ScanDirection::RightToLeft => "right-to-left",
                            };
                            report.decision = Decision::nonhalt(
                                &text,
                                spec.name(),
                                Witness::FarDirect { dfa_states: n, direction: direction.into() },
                            );
                            report.far_certificate = Some(*cert);
                            break 'far;
                        }
                    }
                }
                if report.decision.verdict == Verdict::NonHalt {
                    return report;
                }
            }
            DeciderSpec::FarMitm { max_dfa } => {
                for n in 1..=*max_dfa {
                    if let FarDecision::NonHalt(cert) = decide_far_mitm(table, n) {
                        report.decision = Decision::nonhalt(
                            &text,
                            spec.name(),
                            Witness::FarMitm { dfa_states: n },
                        );
                        report.far_certificate = Some(*cert);
                        return report;
                    }
                }
            }
            DeciderSpec::Bouncers { step_limit, macro_limit, max_formula_tapes } => {
                let params = BouncersParams {
                    step_limit: *step_limit,
                    macro_limit: *macro_limit,
                    max_formula_tapes: *max_formula_tapes,
                    ..BouncersParams::default()
                };
                if let BouncersDecision::NonHalt(cert) = decide_bouncers(table, &params) {
                    report.decision = Decision::nonhalt(
                        &text,
                        spec.name(),
                        Witness::Bouncer {
                            start_step: cert.start_step,
                            macro_steps: cert.macro_steps,
                            formula: cert.formula.clone(),
                        },
                    );
                    report.bouncer_certificate = Some(*cert);
                    return report;
                }
            }
        }
    }
    report
}

/// Parse a pipeline specification like
/// `cyclers:1000,backward:50,bouncers:10000:1000:64`. Omitted parameters
/// fall back to the documented defaults.
pub fn parse_pipeline_spec(spec: &str) -> Result<Vec<DeciderSpec>, ParsePipelineError> {
    let mut deciders = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let mut fields = part.trim().split(':');
        let name = fields.next().unwrap();
        let params: Vec<u64> = fields
            .map(|f| f.parse().map_err(|_| ParsePipelineError::BadParameter(part.into())))
            .collect::<Result<_, _>>()?;
        let get = |i: usize, default: u64| params.get(i).copied().unwrap_or(default);
        deciders.push(match name {
            "cyclers" => DeciderSpec::Cyclers {
                time_limit: get(0, 1000),
                max_configs: get(1, 1_000_000) as usize,
            },
            "translated-cyclers" => DeciderSpec::TranslatedCyclers { time_limit: get(0, 1000) },
            "backward" => DeciderSpec::Backward {
                max_depth: get(0, 50),
                node_budget: get(1, 100_000) as usize,
            },
            "halting-segment" => DeciderSpec::HaltingSegment {
                max_segment: get(0, 8) as usize,
                node_budget: get(1, 1_000_000) as usize,
            },
            "far-direct" => DeciderSpec::FarDirect { max_dfa: get(0, 4) as usize },
            "far-mitm" => DeciderSpec::FarMitm { max_dfa: get(0, 6) as usize },
            "bouncers" => DeciderSpec::Bouncers {
                step_limit: get(0, 10_000),
                macro_limit: get(1, 1000),
                max_formula_tapes: get(2, 64) as usize,
            },
            _ => return Err(ParsePipelineError::UnknownDecider(name.into())),
        });
    }
    Ok(deciders)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePipelineError {
    #[error("unknown decider {0:?}")]
    UnknownDecider(String),
    #[error("bad parameter in {0:?}")]
    BadParameter(String),
}

/// Kind of certificate file to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Far,
    Bouncer,
}

impl FromStr for CertKind {
    type Err = String;
    fn from_str(s: &str) -> Result<CertKind, String> {
        match s {
            "far" => Ok(CertKind::Far),
            "bouncer" => Ok(CertKind::Bouncer),
            other => Err(format!("unknown certificate kind {other:?}")),
        }
    }
}

/// Result of verifying one certificate entry of a file.
#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub index: usize,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok { "pass" } else { "fail" };
        write!(f, "certificate {}: {} ({})", self.index, status, self.detail)
    }
}

/// Verify a certificate file: either a single JSON object or one JSON object
/// per line. Reports pass/fail per certificate with the first violated
/// condition named.
pub fn verify_file(contents: &str, kind: CertKind) -> Vec<CertReport> {
    let entries: Vec<&str> = if contents.trim_start().starts_with('{') && contents.trim().lines().count() == 1
    {
        vec![contents.trim()]
    } else {
        contents.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
    };
    entries
        .iter()
        .enumerate()
        .map(|(index, entry)| {
            let (ok, detail) = match kind {
                CertKind::Far => match serde_json::from_str::<FarCertificate>(entry) {
                    Err(e) => (false, format!("parse error: {e}")),
                    Ok(cert) => match cert.verify() {
                        Ok(()) => (true, format!("machine {}", cert.machine)),
                        Err(e) => (false, e.to_string()),
                    },
                },
                CertKind::Bouncer => match serde_json::from_str::<BouncerCertificate>(entry) {
                    Err(e) => (false, format!("parse error: {e}")),
                    Ok(cert) => match cert.verify() {
                        Ok(()) => (true, format!("machine {}", cert.machine)),
                        Err(e) => (false, e.to_string()),
                    },
                },
            };
            CertReport { index, ok, detail }
        })
        .collect()
}
