use super::density::DensityMatrix;
use super::eigen::{psd_spectrum, psd_sqrt};
use super::layout::RegisterLayout;
use super::matrix::CMatrix;
use crate::{Error, Result};

/// A labeled generalized measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<(String, CMatrix)>,
}

/// One POVM outcome: `p = tr(E ρ)` and the post-state `√E ρ √E / p`
/// (absent when `p` vanishes).
#[derive(Debug, Clone)]
pub struct PovmOutcome {
    pub label: String,
    pub probability: f64,
    pub post_state: Option<DensityMatrix>,
}

impl Povm {
    /// Checks that every element is PSD (1e-10) and that they sum to the
    /// identity (1e-9).
    pub fn new(elements: Vec<(String, CMatrix)>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let d = first.1.rows();
        let mut sum = CMatrix::zeros(d, d);
        for (label, e) in &elements {
            if e.rows() != d || e.cols() != d {
                return Err(Error::InvalidPovm(format!("element {label} is not {d}x{d}")));
            }
            psd_spectrum(e).map_err(|err| Error::InvalidPovm(format!("element {label}: {err}")))?;
            sum = &sum + e;
        }
        let gap = sum.max_abs_diff(&CMatrix::identity(d));
        if gap > 1e-9 {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {gap:e}"
            )));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[(String, CMatrix)] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].1.rows()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn element(&self, label: &str) -> Option<&CMatrix> {
        self.elements.iter().find(|(l, _)| l == label).map(|(_, e)| e)
    }

    /// Lifts the measurement onto `register` of `layout`, acting as the
    /// identity elsewhere.
    pub fn on_register(&self, layout: &RegisterLayout, register: &str) -> Result<Self> {
        let pos = layout.position(register)?;
        let d = layout.registers()[pos].1;
        if d != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.dim(),
            });
        }
        let before: usize = layout.registers()[..pos].iter().map(|(_, d)| d).product();
        let after: usize = layout.registers()[pos + 1..].iter().map(|(_, d)| d).product();
        let (pre, post) = (CMatrix::identity(before), CMatrix::identity(after));
        Ok(Self {
            elements: self
                .elements
                .iter()
                .map(|(l, e)| (l.clone(), pre.kron(e).kron(&post)))
                .collect(),
        })
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<Vec<PovmOutcome>> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        self.elements
            .iter()
            .map(|(label, e)| {
                let probability = (e * rho.matrix()).trace().re.max(0.0);
                let post_state = if probability > 1e-15 {
                    let r = psd_sqrt(e)?;
                    let m = &(&r * rho.matrix()) * &r;
                    Some(DensityMatrix::from_parts(
                        rho.layout().clone(),
                        m.scale_real(1.0 / probability).hermitian_part(),
                    ))
                } else {
                    None
                };
                Ok(PovmOutcome {
                    label: label.clone(),
                    probability,
                    post_state,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> DensityMatrix {
        DensityMatrix::new(
            RegisterLayout::single("A", 2).unwrap(),
            CMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn computational_measurement_of_plus() {
        let p = Povm::new(vec![
            ("0".into(), CMatrix::diagonal(&[1.0, 0.0])),
            ("1".into(), CMatrix::diagonal(&[0.0, 1.0])),
        ])
        .unwrap();
        let out = p.apply(&plus()).unwrap();
        assert!((out[0].probability - 0.5).abs() < 1e-15);
        assert!((out[1].probability - 0.5).abs() < 1e-15);
        let post = out[0].post_state.as_ref().unwrap();
        assert!((post.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_povm_leaves_state() {
        let p = Povm::new(vec![("I".into(), CMatrix::identity(2))]).unwrap();
        let out = p.apply(&plus()).unwrap();
        assert!((out[0].probability - 1.0).abs() < 1e-15);
        assert!(out[0].post_state.as_ref().unwrap().matrix().max_abs_diff(plus().matrix()) < 1e-12);
    }

    #[test]
    fn incomplete_povm_is_rejected() {
        let r = Povm::new(vec![("0".into(), CMatrix::diagonal(&[1.0, 0.0]))]);
        assert!(matches!(r, Err(Error::InvalidPovm(_))));
    }

    #[test]
    fn lifting_preserves_probabilities() {
        let layout = RegisterLayout::new([("A", 2), ("B", 2)]).unwrap();
        let p = Povm::new(vec![
            ("0".into(), CMatrix::diagonal(&[1.0, 0.0])),
            ("1".into(), CMatrix::diagonal(&[0.0, 1.0])),
        ])
        .unwrap()
        .on_register(&layout, "B")
        .unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.elements()[1].1, CMatrix::diagonal(&[0.0, 1.0, 0.0, 1.0]));
    }
}
