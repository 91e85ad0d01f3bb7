//! Exact complex statevector simulation for small registers.
//!
//! Qubit 0 is the leftmost symbol in ket notation and therefore the most
//! significant bit of a basis index: |b0 b1 .. b_{n-1}> lives at index
//! sum(b_k * 2^(n-1-k)). Every operation returns a fresh state; a
//! [`StateVector`] is never mutated once handed out.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

/// Complex amplitude attached to one basis state.
pub type Amplitude = Complex64;

/// Index of a computational basis state, in `0..2^n`.
pub type BasisIndex = usize;

/// Largest register the fast kernels accept.
pub const MAX_QUBITS: usize = 12;

/// Largest register [`kron_apply_reference`] accepts; the expanded matrix
/// grows as `4^n`, so the reference path is deliberately capped.
pub const MAX_REFERENCE_QUBITS: usize = 6;

/// Entrywise tolerance for unitarity checks on gate construction.
pub const UNITARY_TOL: f64 = 1e-12;

/// Tolerance on the squared norm of a state claimed to be normalized.
pub const NORM_TOL: f64 = 1e-9;

const ZERO: Amplitude = Complex64::new(0.0, 0.0);
const ONE: Amplitude = Complex64::new(1.0, 0.0);
const MINUS_ONE: Amplitude = Complex64::new(-1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QStateError {
    #[error("qubit count {0} outside the supported range 1..={MAX_QUBITS}")]
    QubitCountOutOfRange(usize),
    #[error("basis index {index} out of range for a {num_qubits}-qubit register")]
    BasisIndexOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("two-qubit gate requires distinct qubits, got {0} twice")]
    DuplicateQubit(usize),
    #[error("expected {expected} amplitudes, got {got}")]
    WrongAmplitudeCount { got: usize, expected: usize },
    #[error("non-finite complex component")]
    NonFinite,
    #[error("state is not normalized: squared norm is {0}")]
    NotNormalized(f64),
    #[error("gate is not unitary: entrywise deviation {0:e} exceeds {UNITARY_TOL:e}")]
    NonUnitaryGate(f64),
    #[error("{num_qubits} qubits exceed the {MAX_REFERENCE_QUBITS}-qubit cap of the full-matrix reference")]
    ReferenceTooLarge { num_qubits: usize },
    #[error("qubit counts differ: {0} vs {1}")]
    QubitCountMismatch(usize, usize),
}

/// A 2x2 unitary acting on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate1Q {
    entries: [[Amplitude; 2]; 2],
}

impl Gate1Q {
    /// Builds a gate from explicit entries, rejecting matrices that are not
    /// unitary within [`UNITARY_TOL`].
    pub fn from_entries(entries: [[Amplitude; 2]; 2]) -> Result<Self, QStateError> {
        if entries
            .iter()
            .flatten()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QStateError::NonFinite);
        }
        let gate = Gate1Q { entries };
        let deviation = gate.unitarity_deviation();
        if deviation > UNITARY_TOL {
            return Err(QStateError::NonUnitaryGate(deviation));
        }
        Ok(gate)
    }

    pub fn identity() -> Self {
        Gate1Q {
            entries: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Gate1Q {
            entries: [[h, h], [h, -h]],
        }
    }

    pub fn pauli_z() -> Self {
        Gate1Q {
            entries: [[ONE, ZERO], [ZERO, MINUS_ONE]],
        }
    }

    /// diag(1, (-1)^bit): the identity when `bit` is clear, Pauli Z when set.
    /// The conditional phase is the exact constant -1, not a rounded
    /// transcendental.
    pub fn bit_phase(bit: bool) -> Self {
        if bit {
            Self::pauli_z()
        } else {
            Self::identity()
        }
    }

    pub fn entries(&self) -> [[Amplitude; 2]; 2] {
        self.entries
    }

    /// Largest entrywise magnitude of `G^dagger G - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let g = &self.entries;
        let mut worst = 0.0f64;
        for row in 0..2 {
            for col in 0..2 {
                let dot = g
                    .iter()
                    .fold(ZERO, |acc, g_row| acc + g_row[row].conj() * g_row[col]);
                let target = if row == col { ONE } else { ZERO };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    /// The computational basis state with the given index. Index bits read
    /// left to right as qubits 0, 1, .. as described in the module docs.
    pub fn basis_state(num_qubits: usize, index: BasisIndex) -> Result<Self, QStateError> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(QStateError::BasisIndexOutOfRange { index, num_qubits });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps an explicit amplitude vector, which must have length `2^n`,
    /// contain only finite components, and be normalized within [`NORM_TOL`].
    pub fn from_amplitudes(
        num_qubits: usize,
        amplitudes: Vec<Amplitude>,
    ) -> Result<Self, QStateError> {
        check_qubit_count(num_qubits)?;
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(QStateError::WrongAmplitudeCount {
                got: amplitudes.len(),
                expected,
            });
        }
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QStateError::NonFinite);
        }
        let state = StateVector {
            num_qubits,
            amplitudes,
        };
        let squared = state.squared_norm();
        if (squared - 1.0).abs() > NORM_TOL {
            return Err(QStateError::NotNormalized(squared));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    /// Amplitude at one basis index. Panics if the index is out of range,
    /// matching slice indexing.
    pub fn amplitude(&self, index: BasisIndex) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn squared_norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies a single-qubit gate, pairing each basis index with the index
    /// that differs only in `qubit`'s bit.
    pub fn apply_1q(&self, qubit: usize, gate: &Gate1Q) -> Result<Self, QStateError> {
        self.check_qubit(qubit)?;
        let [[g00, g01], [g10, g11]] = gate.entries;
        let stride = self.stride(qubit);
        let mut out = self.amplitudes.clone();
        let mut base = 0;
        while base < out.len() {
            for low in base..base + stride {
                let high = low + stride;
                let a = out[low];
                let b = out[high];
                out[low] = g00 * a + g01 * b;
                out[high] = g10 * a + g11 * b;
            }
            base += 2 * stride;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    /// Controlled-Z between two distinct qubits: negates every amplitude
    /// whose basis index has both bits set. Symmetric in its arguments.
    pub fn apply_cz(&self, a: usize, b: usize) -> Result<Self, QStateError> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(QStateError::DuplicateQubit(a));
        }
        let mask = self.stride(a) | self.stride(b);
        let mut out = self.amplitudes.clone();
        for (index, amp) in out.iter_mut().enumerate() {
            if index & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    /// Probability of each basis outcome under a full measurement. Only
    /// outcomes with nonzero probability appear. Errors unless the state is
    /// normalized within [`NORM_TOL`], so the values sum to 1 within that
    /// same bound.
    pub fn measure_all_distribution(&self) -> Result<BTreeMap<BasisIndex, f64>, QStateError> {
        let squared = self.squared_norm();
        if (squared - 1.0).abs() > NORM_TOL {
            return Err(QStateError::NotNormalized(squared));
        }
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter_map(|(index, a)| {
                let p = a.norm_sqr();
                (p > 0.0).then_some((index, p))
            })
            .collect())
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_amplitude_diff(&self, other: &Self) -> Result<f64, QStateError> {
        if self.num_qubits != other.num_qubits {
            return Err(QStateError::QubitCountMismatch(
                self.num_qubits,
                other.num_qubits,
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Strict equality up to `tol` per amplitude. Deliberately sensitive to
    /// global phase; use [`StateVector::fidelity`] for the phase-blind
    /// comparison.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool, QStateError> {
        Ok(self.max_amplitude_diff(other)? <= tol)
    }

    /// |<self|other>|^2, which ignores global phase.
    pub fn fidelity(&self, other: &Self) -> Result<f64, QStateError> {
        if self.num_qubits != other.num_qubits {
            return Err(QStateError::QubitCountMismatch(
                self.num_qubits,
                other.num_qubits,
            ));
        }
        let overlap: Amplitude = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum();
        Ok(overlap.norm_sqr())
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), QStateError> {
        if qubit >= self.num_qubits {
            return Err(QStateError::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Distance between basis indices that differ only in this qubit's bit.
    fn stride(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }
}

fn check_qubit_count(num_qubits: usize) -> Result<(), QStateError> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(QStateError::QubitCountOutOfRange(num_qubits));
    }
    Ok(())
}

/// One gate placed on a register, in the form the reference path consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GatePlacement {
    Single { qubit: usize, gate: Gate1Q },
    ControlledZ { a: usize, b: usize },
}

const I2: [[Amplitude; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];
const Z2: [[Amplitude; 2]; 2] = [[ONE, ZERO], [ZERO, MINUS_ONE]];
const P0: [[Amplitude; 2]; 2] = [[ONE, ZERO], [ZERO, ZERO]];
const P1: [[Amplitude; 2]; 2] = [[ZERO, ZERO], [ZERO, ONE]];

/// Applies `placement` the slow way: expand the full `2^n x 2^n` operator as
/// a Kronecker product of 2x2 factors and multiply it against the state.
///
/// This shares no code with the bit-stride kernels above and exists to
/// cross-check them. Registers larger than [`MAX_REFERENCE_QUBITS`] are
/// rejected rather than silently taking seconds.
pub fn kron_apply_reference(
    state: &StateVector,
    placement: &GatePlacement,
) -> Result<StateVector, QStateError> {
    let n = state.num_qubits;
    if n > MAX_REFERENCE_QUBITS {
        return Err(QStateError::ReferenceTooLarge { num_qubits: n });
    }
    let matrix = match *placement {
        GatePlacement::Single { qubit, gate } => {
            state.check_qubit(qubit)?;
            kron_chain(n, |k| if k == qubit { gate.entries } else { I2 })
        }
        GatePlacement::ControlledZ { a, b } => {
            state.check_qubit(a)?;
            state.check_qubit(b)?;
            if a == b {
                return Err(QStateError::DuplicateQubit(a));
            }
            // CZ = P0(a) (x) I + P1(a) (x) Z(b), expanded factor by factor.
            let keep = kron_chain(n, |k| if k == a { P0 } else { I2 });
            let flip = kron_chain(n, |k| {
                if k == a {
                    P1
                } else if k == b {
                    Z2
                } else {
                    I2
                }
            });
            keep.iter().zip(&flip).map(|(x, y)| x + y).collect()
        }
    };
    let dim = state.dim();
    let mut amplitudes = vec![ZERO; dim];
    for (row, slot) in amplitudes.iter_mut().enumerate() {
        let mut acc = ZERO;
        for (col, amp) in state.amplitudes.iter().enumerate() {
            acc += matrix[row * dim + col] * amp;
        }
        *slot = acc;
    }
    Ok(StateVector {
        num_qubits: n,
        amplitudes,
    })
}

/// Row-major `2^n x 2^n` product of per-qubit 2x2 factors, accumulated from
/// qubit 0 outward so that qubit 0 lands on the most significant index bit.
fn kron_chain(n: usize, factor: impl Fn(usize) -> [[Amplitude; 2]; 2]) -> Vec<Amplitude> {
    let mut dim = 1usize;
    let mut matrix = vec![ONE];
    for q in 0..n {
        let f = factor(q);
        let next_dim = dim * 2;
        let mut next = vec![ZERO; next_dim * next_dim];
        for row in 0..dim {
            for col in 0..dim {
                let base = matrix[row * dim + col];
                for (fr, f_row) in f.iter().enumerate() {
                    for (fc, f_val) in f_row.iter().enumerate() {
                        next[(row * 2 + fr) * next_dim + (col * 2 + fc)] = base * f_val;
                    }
                }
            }
        }
        matrix = next;
        dim = next_dim;
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Amplitude {
        Complex64::new(re, im)
    }

    /// General single-qubit unitary from three angles; unitary by
    /// construction, so `from_entries` must accept it.
    fn gate_from_angles(theta: f64, phi: f64, lambda: f64) -> Gate1Q {
        let (ct, st) = (theta.cos(), theta.sin());
        Gate1Q::from_entries([
            [c(ct, 0.0), -Complex64::from_polar(st, lambda)],
            [
                Complex64::from_polar(st, phi),
                Complex64::from_polar(ct, phi + lambda),
            ],
        ])
        .expect("angle parametrization is unitary")
    }

    #[test]
    fn basis_state_places_single_unit_amplitude() {
        let s = StateVector::basis_state(3, 5).unwrap();
        assert_eq!(s.dim(), 8);
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expect = if i == 5 { ONE } else { ZERO };
            assert_eq!(*a, expect);
        }
    }

    #[test]
    fn basis_state_rejects_bad_arguments() {
        assert_eq!(
            StateVector::basis_state(0, 0),
            Err(QStateError::QubitCountOutOfRange(0))
        );
        assert_eq!(
            StateVector::basis_state(13, 0),
            Err(QStateError::QubitCountOutOfRange(13))
        );
        assert_eq!(
            StateVector::basis_state(2, 4),
            Err(QStateError::BasisIndexOutOfRange {
                index: 4,
                num_qubits: 2
            })
        );
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        // |10> is qubit 0 set, qubit 1 clear, so index 2 in a 2-qubit register.
        let s = StateVector::basis_state(2, 2).unwrap();
        let flipped = s.apply_1q(1, &Gate1Q::hadamard()).unwrap();
        // H on qubit 1 spreads |10> over indices 2 and 3, leaving 0 and 1 empty.
        assert_eq!(flipped.amplitude(0), ZERO);
        assert_eq!(flipped.amplitude(1), ZERO);
        assert!(flipped.amplitude(2).re > 0.5);
        assert!(flipped.amplitude(3).re > 0.5);
    }

    #[test]
    fn from_amplitudes_checks_shape_and_norm() {
        assert_eq!(
            StateVector::from_amplitudes(2, vec![ONE; 3]),
            Err(QStateError::WrongAmplitudeCount {
                got: 3,
                expected: 4
            })
        );
        let err = StateVector::from_amplitudes(1, vec![ONE, ONE]);
        assert!(matches!(err, Err(QStateError::NotNormalized(_))));
        let err = StateVector::from_amplitudes(1, vec![c(f64::NAN, 0.0), ZERO]);
        assert_eq!(err, Err(QStateError::NonFinite));
    }

    #[test]
    fn named_gates_are_unitary_and_exact() {
        for gate in [
            Gate1Q::identity(),
            Gate1Q::hadamard(),
            Gate1Q::pauli_z(),
            Gate1Q::bit_phase(false),
            Gate1Q::bit_phase(true),
        ] {
            assert!(gate.unitarity_deviation() <= UNITARY_TOL);
        }
        assert_eq!(Gate1Q::bit_phase(false), Gate1Q::identity());
        assert_eq!(Gate1Q::bit_phase(true), Gate1Q::pauli_z());
        assert_eq!(Gate1Q::pauli_z().entries()[1][1], MINUS_ONE);
    }

    #[test]
    fn from_entries_rejects_non_unitary() {
        let err = Gate1Q::from_entries([[ONE, ONE], [ZERO, ONE]]);
        assert!(matches!(err, Err(QStateError::NonUnitaryGate(_))));
    }

    #[test]
    fn hadamard_is_its_own_inverse() {
        let h = Gate1Q::hadamard();
        let start = StateVector::basis_state(3, 6).unwrap();
        let round_trip = start.apply_1q(1, &h).unwrap().apply_1q(1, &h).unwrap();
        assert!(round_trip.approx_eq(&start, 1e-15).unwrap());
    }

    #[test]
    fn cz_negates_exactly_the_both_set_indices() {
        let amp = c(0.5, 0.0);
        let s = StateVector::from_amplitudes(2, vec![amp; 4]).unwrap();
        let after = s.apply_cz(0, 1).unwrap();
        assert_eq!(after.amplitude(0), amp);
        assert_eq!(after.amplitude(1), amp);
        assert_eq!(after.amplitude(2), amp);
        assert_eq!(after.amplitude(3), -amp);
    }

    #[test]
    fn cz_is_symmetric_and_self_inverse() {
        let h = Gate1Q::hadamard();
        let mut s = StateVector::basis_state(3, 0).unwrap();
        for q in 0..3 {
            s = s.apply_1q(q, &h).unwrap();
        }
        let ab = s.apply_cz(0, 2).unwrap();
        let ba = s.apply_cz(2, 0).unwrap();
        assert!(ab.approx_eq(&ba, 0.0).unwrap());
        let twice = ab.apply_cz(0, 2).unwrap();
        assert!(twice.approx_eq(&s, 0.0).unwrap());
    }

    #[test]
    fn cz_requires_distinct_qubits() {
        let s = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(s.apply_cz(1, 1), Err(QStateError::DuplicateQubit(1)));
    }

    #[test]
    fn apply_rejects_out_of_range_qubits() {
        let s = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(
            s.apply_1q(2, &Gate1Q::identity()),
            Err(QStateError::QubitOutOfRange {
                qubit: 2,
                num_qubits: 2
            })
        );
        assert_eq!(
            s.apply_cz(0, 5),
            Err(QStateError::QubitOutOfRange {
                qubit: 5,
                num_qubits: 2
            })
        );
    }

    #[test]
    fn measurement_distribution_matches_squared_magnitudes() {
        let h = Gate1Q::hadamard();
        let s = StateVector::basis_state(2, 0)
            .unwrap()
            .apply_1q(0, &h)
            .unwrap();
        let dist = s.measure_all_distribution().unwrap();
        assert_eq!(dist.len(), 2);
        assert!((dist[&0] - 0.5).abs() < 1e-12);
        assert!((dist[&2] - 0.5).abs() < 1e-12);
        let total: f64 = dist.values().sum();
        assert!((total - 1.0).abs() < NORM_TOL);
    }

    #[test]
    fn measurement_rejects_unnormalized_states() {
        // The public constructors reject unnormalized input, so the bad
        // state has to be assembled through the module-private fields.
        let bad = StateVector {
            num_qubits: 1,
            amplitudes: vec![c(0.5, 0.0), ZERO],
        };
        assert!(matches!(
            bad.measure_all_distribution(),
            Err(QStateError::NotNormalized(_))
        ));
    }

    #[test]
    fn approx_eq_sees_global_phase_but_fidelity_does_not() {
        let plus = StateVector::basis_state(1, 0)
            .unwrap()
            .apply_1q(0, &Gate1Q::hadamard())
            .unwrap();
        let minus_amplitudes = plus.amplitudes().iter().map(|a| -a).collect();
        let minus = StateVector::from_amplitudes(1, minus_amplitudes).unwrap();
        assert!(!plus.approx_eq(&minus, 1e-6).unwrap());
        assert!((plus.fidelity(&minus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn comparisons_reject_mismatched_sizes() {
        let a = StateVector::basis_state(1, 0).unwrap();
        let b = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(
            a.approx_eq(&b, 1e-9),
            Err(QStateError::QubitCountMismatch(1, 2))
        );
        assert_eq!(a.fidelity(&b), Err(QStateError::QubitCountMismatch(1, 2)));
    }

    #[test]
    fn reference_path_rejects_large_registers() {
        let s = StateVector::basis_state(7, 0).unwrap();
        let placement = GatePlacement::Single {
            qubit: 0,
            gate: Gate1Q::hadamard(),
        };
        assert_eq!(
            kron_apply_reference(&s, &placement),
            Err(QStateError::ReferenceTooLarge { num_qubits: 7 })
        );
    }

    #[test]
    fn reference_path_validates_placements() {
        let s = StateVector::basis_state(3, 0).unwrap();
        assert_eq!(
            kron_apply_reference(&s, &GatePlacement::ControlledZ { a: 2, b: 2 }),
            Err(QStateError::DuplicateQubit(2))
        );
        assert_eq!(
            kron_apply_reference(
                &s,
                &GatePlacement::Single {
                    qubit: 3,
                    gate: Gate1Q::identity()
                }
            ),
            Err(QStateError::QubitOutOfRange {
                qubit: 3,
                num_qubits: 3
            })
        );
    }

    #[test]
    fn kernels_match_reference_on_a_fixed_circuit() {
        let h = Gate1Q::hadamard();
        let mut fast = StateVector::basis_state(3, 3).unwrap();
        let mut slow = fast.clone();
        let steps = [
            GatePlacement::Single { qubit: 0, gate: h },
            GatePlacement::ControlledZ { a: 0, b: 2 },
            GatePlacement::Single { qubit: 2, gate: h },
            GatePlacement::ControlledZ { a: 1, b: 0 },
            GatePlacement::Single {
                qubit: 1,
                gate: Gate1Q::pauli_z(),
            },
        ];
        for step in &steps {
            fast = match *step {
                GatePlacement::Single { qubit, gate } => fast.apply_1q(qubit, &gate).unwrap(),
                GatePlacement::ControlledZ { a, b } => fast.apply_cz(a, b).unwrap(),
            };
            slow = kron_apply_reference(&slow, step).unwrap();
        }
        assert!(fast.approx_eq(&slow, 1e-12).unwrap());
    }

    prop_compose! {
        fn arb_angles()(theta in 0.0..std::f64::consts::TAU,
                        phi in 0.0..std::f64::consts::TAU,
                        lambda in 0.0..std::f64::consts::TAU) -> (f64, f64, f64) {
            (theta, phi, lambda)
        }
    }

    prop_compose! {
        fn arb_state(num_qubits: usize)(
            parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << num_qubits)
                .prop_filter("norm too small to normalize", |parts| {
                    parts.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-3
                })
        ) -> StateVector {
            let norm = parts
                .iter()
                .map(|(re, im)| re * re + im * im)
                .sum::<f64>()
                .sqrt();
            let amplitudes = parts.iter().map(|&(re, im)| c(re / norm, im / norm)).collect();
            StateVector::from_amplitudes(num_qubits, amplitudes).expect("normalized by construction")
        }
    }

    proptest! {
        #[test]
        fn random_angle_gates_pass_the_unitarity_check(angles in arb_angles()) {
            let gate = gate_from_angles(angles.0, angles.1, angles.2);
            prop_assert!(gate.unitarity_deviation() <= UNITARY_TOL);
        }

        #[test]
        fn single_qubit_gates_preserve_norm(state in arb_state(3), angles in arb_angles(), qubit in 0usize..3) {
            let gate = gate_from_angles(angles.0, angles.1, angles.2);
            let after = state.apply_1q(qubit, &gate).unwrap();
            prop_assert!((after.squared_norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn cz_permutes_signs_only(state in arb_state(3), a in 0usize..3, b in 0usize..3) {
            prop_assume!(a != b);
            let after = state.apply_cz(a, b).unwrap();
            for (x, y) in state.amplitudes().iter().zip(after.amplitudes()) {
                prop_assert!((x.norm() - y.norm()).abs() < 1e-15);
            }
            let twice = after.apply_cz(a, b).unwrap();
            prop_assert!(twice.approx_eq(&state, 0.0).unwrap());
        }

        #[test]
        fn fast_single_qubit_kernel_matches_reference(state in arb_state(3), angles in arb_angles(), qubit in 0usize..3) {
            let gate = gate_from_angles(angles.0, angles.1, angles.2);
            let fast = state.apply_1q(qubit, &gate).unwrap();
            let slow = kron_apply_reference(&state, &GatePlacement::Single { qubit, gate }).unwrap();
            prop_assert!(fast.approx_eq(&slow, 1e-12).unwrap());
        }

        #[test]
        fn fast_cz_kernel_matches_reference(state in arb_state(4), a in 0usize..4, b in 0usize..4) {
            prop_assume!(a != b);
            let fast = state.apply_cz(a, b).unwrap();
            let slow = kron_apply_reference(&state, &GatePlacement::ControlledZ { a, b }).unwrap();
            prop_assert!(fast.approx_eq(&slow, 1e-12).unwrap());
        }
    }
}
