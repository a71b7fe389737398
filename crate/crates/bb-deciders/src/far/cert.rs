//! FAR certificate files: everything needed to re-verify a non-halting proof
//! standalone, as JSON with base64 row bitmaps.

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::far::direct::{assemble_nfa, DirectFarState};
use crate::far::matrix::{BoolMat, BoolVec};
use crate::far::nfa::{check_far_conditions, FarViolation};
use crate::machine::TransitionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanDirection {
    #[serde(rename = "left-to-right")]
    LeftToRight,
    #[serde(rename = "right-to-left")]
    RightToLeft,
}

/// A FAR proof: left DFA table plus the right-side matrices, accept vector
/// and steady state. The machine is stored unmirrored; `direction` records
/// which scan the proof applies to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarCertificate {
    pub version: u32,
    pub machine: String,
    pub direction: ScanDirection,
    pub l: usize,
    pub d: usize,
    pub delta: Vec<usize>,
    pub r0: Vec<String>,
    pub r1: Vec<String>,
    pub a: String,
    pub s: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FarCertError {
    #[error("cannot parse machine: {0}")]
    Machine(#[from] crate::machine::ParseMachineError),
    #[error("malformed certificate field: {0}")]
    Field(String),
    #[error("certificate does not verify: {0}")]
    Violation(#[from] FarViolation),
}

impl FarCertificate {
    pub fn from_parts(
        machine: &str,
        direction: ScanDirection,
        l: usize,
        machine_states: usize,
        delta: &[usize],
        state: &DirectFarState,
    ) -> FarCertificate {
        let stride = machine_states.max(5);
        let d = stride * l + 1;
        let rows = |m: &BoolMat| (0..d).map(|r| BASE64.encode(m.row_bytes(r))).collect();
        let mut steady = BoolVec::zeros(d);
        steady.set(d - 1, true);
        FarCertificate {
            version: 1,
            machine: machine.to_string(),
            direction,
            l,
            d,
            delta: delta.to_vec(),
            r0: rows(&state.r[0]),
            r1: rows(&state.r[1]),
            a: BASE64.encode(state.accept.to_bytes()),
            s: BASE64.encode(steady.to_bytes()),
        }
    }

    fn decode_matrix(&self, rows: &[String]) -> Result<BoolMat, FarCertError> {
        if rows.len() != self.d {
            return Err(FarCertError::Field(format!("expected {} rows, found {}", self.d, rows.len())));
        }
        let mut m = BoolMat::zeros(self.d, self.d);
        for (r, encoded) in rows.iter().enumerate() {
            let bytes = BASE64
                .decode(encoded)
                .map_err(|e| FarCertError::Field(format!("row {r}: {e}")))?;
            if !m.set_row_from_bytes(r, &bytes) {
                return Err(FarCertError::Field(format!("row {r} has wrong length")));
            }
        }
        Ok(m)
    }

    fn decode_vec(&self, encoded: &str, what: &str) -> Result<BoolVec, FarCertError> {
        let bytes = BASE64
            .decode(encoded)
            .map_err(|e| FarCertError::Field(format!("{what}: {e}")))?;
        BoolVec::from_bytes(self.d, &bytes)
            .ok_or_else(|| FarCertError::Field(format!("{what} has wrong length")))
    }

    /// Rebuild the block NFA and run the full verification conditions.
    pub fn verify(&self) -> Result<(), FarCertError> {
        let table: TransitionTable = self.machine.parse()?;
        let work = match self.direction {
            ScanDirection::LeftToRight => table,
            ScanDirection::RightToLeft => table.mirrored(),
        };
        let stride = work.states().max(5);
        if self.d != stride * self.l + 1 {
            return Err(FarCertError::Field(format!(
                "d = {} does not match stride {} and l = {}",
                self.d, stride, self.l
            )));
        }
        if self.delta.len() != 2 * self.l || self.delta.iter().any(|&v| v >= self.l) {
            return Err(FarCertError::Field("delta is not a complete DFA table".into()));
        }
        let state = DirectFarState {
            r: [self.decode_matrix(&self.r0)?, self.decode_matrix(&self.r1)?],
            accept: self.decode_vec(&self.a, "a")?,
        };
        let stored_steady = self.decode_vec(&self.s, "s")?;
        let (nfa, _) = assemble_nfa(&work, self.l, &self.delta, &state);
        // The stored steady state is embedded into the right block.
        let mut steady = BoolVec::zeros(self.l + self.d);
        for i in stored_steady.iter_ones() {
            steady.set(self.l + i, true);
        }
        check_far_conditions(&work, &nfa, &steady)?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    /// The assembled NFA and steady vector, for direct queries against the
    /// certificate (e.g. word acceptance).
    pub fn nfa(&self) -> Result<(crate::far::nfa::BooleanNfa, BoolVec), FarCertError> {
        let table: TransitionTable = self.machine.parse()?;
        let work = match self.direction {
            ScanDirection::LeftToRight => table,
            ScanDirection::RightToLeft => table.mirrored(),
        };
        let state = DirectFarState {
            r: [self.decode_matrix(&self.r0)?, self.decode_matrix(&self.r1)?],
            accept: self.decode_vec(&self.a, "a")?,
        };
        Ok(assemble_nfa(&work, self.l, &self.delta, &state))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::far::direct::{decide_far_direct, FarDecision};
    use crate::machine::machines;

    fn counter_certificate() -> FarCertificate {
        for n in 1..=4 {
            for ltr in [true, false] {
                let t: TransitionTable = machines::FAR_COUNTER.parse().unwrap();
                if let FarDecision::NonHalt(cert) = decide_far_direct(&t, n, ltr) {
                    return *cert;
                }
            }
        }
        panic!("counter machine undecided");
    }

    #[test]
    fn emitted_certificate_round_trips_through_json() {
        let cert = counter_certificate();
        let json = cert.to_json();
        let back: FarCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(back.verify().is_ok());
    }

    #[test]
    fn clearing_a_bit_fails_verification_with_a_named_condition() {
        let cert = counter_certificate();
        let mut broken = 0;
        for row in 0..cert.d {
            let mut bytes = BASE64.decode(&cert.r0[row]).unwrap();
            for byte in 0..bytes.len() {
                for bit in 0..8 {
                    if bytes[byte] >> bit & 1 == 1 {
                        let mut tampered = cert.clone();
                        bytes[byte] ^= 1 << bit;
                        tampered.r0[row] = BASE64.encode(&bytes);
                        bytes[byte] ^= 1 << bit;
                        let err = tampered.verify().unwrap_err();
                        assert!(matches!(err, FarCertError::Violation(_)), "got {err:?}");
                        broken += 1;
                    }
                }
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn accepted_words_stay_accepted_after_trailing_zero() {
        // Condition T_0 a^T = a^T makes the language closed under trailing
        // zeros; sample a few accepted words from the certificate NFA.
        let cert = counter_certificate();
        let (nfa, _) = cert.nfa().unwrap();
        let mut checked = 0;
        for code in 0..(1usize << 8) {
            // Sample words: three bits, one state letter, four bits.
            let mut word: Vec<usize> = (0..3).map(|i| code >> i & 1).collect();
            word.push(2 + (code >> 3 & 1));
            word.extend((4..8).map(|i| code >> i & 1));
            if word.iter().any(|&s| s >= nfa.alphabet_size()) {
                continue;
            }
            if nfa.accepts(&word).unwrap() {
                let mut extended = word.clone();
                extended.push(0);
                assert!(nfa.accepts(&extended).unwrap());
                checked += 1;
            }
        }
        assert!(checked > 0, "no accepted sample words found");
    }
}
