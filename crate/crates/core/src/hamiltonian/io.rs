//! Plain-text Pauli format: one `<real> <imag> <word>` term per line, `#`
//! starts a comment, blank lines are ignored.

use num_complex::Complex;

use super::{HamiltonianError, PauliSum, PauliTerm};
use crate::scalar::Real;

pub fn parse_pauli_file<T: Real>(text: &str) -> Result<PauliSum<T>, HamiltonianError> {
    let mut terms = Vec::new();
    let mut n_qubits: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(HamiltonianError::MalformedLine {
                line: line_no,
                reason: format!("expected 3 tokens, found {}", tokens.len()),
            });
        }
        let parse = |tok: &str| {
            tok.parse::<T>().map_err(|_| HamiltonianError::MalformedLine {
                line: line_no,
                reason: format!("non-numeric coefficient `{tok}`"),
            })
        };
        let re = parse(tokens[0])?;
        let im = parse(tokens[1])?;
        let word = tokens[2];
        let len = word.chars().count();
        match n_qubits {
            None => n_qubits = Some(len),
            Some(n) if n != len => {
                return Err(HamiltonianError::InconsistentWordLength {
                    line: line_no,
                    expected: n,
                    found: len,
                })
            }
            _ => {}
        }
        terms.push(PauliTerm::new(Complex::new(re, im), word));
    }
    let n = n_qubits.ok_or(HamiltonianError::EmptyHamiltonian)?;
    PauliSum::new(n, terms)
}

/// Deterministic serialization; the inverse of [`parse_pauli_file`] on
/// canonical sums.
pub fn serialize_pauli<T: Real>(h: &PauliSum<T>) -> String {
    h.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn single_term() {
        let h: PauliSum<f64> = parse_pauli_file("1.0 0.0 Z").unwrap();
        assert_eq!(h.n_qubits(), 1);
        assert_eq!(h.terms(), &[PauliTerm::new(c(1.0, 0.0), "Z")]);
    }

    #[test]
    fn duplicates_merge() {
        let h: PauliSum<f64> = parse_pauli_file("0.5 0.0 ZZ\n0.5 0.0 ZZ").unwrap();
        assert_eq!(h.terms(), &[PauliTerm::new(c(1.0, 0.0), "ZZ")]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n 0.25 0 XY  # trailing\n-1 0.0 ZI\n";
        let h: PauliSum<f64> = parse_pauli_file(text).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(serialize_pauli(&h), "0.25 0 XY\n-1 0 ZI\n");
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse_pauli_file::<f64>("1.0 0.0 XY\n2.0 0.0 X"),
            Err(HamiltonianError::InconsistentWordLength { line: 2, expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_pauli_file::<f64>("1.0 Z"),
            Err(HamiltonianError::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_pauli_file::<f64>("one 0 Z"),
            Err(HamiltonianError::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_pauli_file::<f64>("# nothing\n\n"),
            Err(HamiltonianError::EmptyHamiltonian)
        ));
    }
}
