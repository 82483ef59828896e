//! Shared fixtures for the benchmarks.

use origon_core::critical::critical_angles;
use origon_core::division::DivisionSpec;
use origon_core::GadgetParams;

pub fn cube() -> GadgetParams {
    GadgetParams::from_degrees(90.0, 90.0, 90.0)
}

pub fn asymmetric() -> GadgetParams {
    GadgetParams::from_degrees(90.0, 45.0, 120.0)
}

pub fn tilted() -> GadgetParams {
    GadgetParams::new(1.7, 1.5, 1.4).with_tilts(0.1, 0.2)
}

/// Three equal levels with an 18 degree left tongue: every tip and foot case appears.
pub fn mixed_division() -> DivisionSpec {
    DivisionSpec::uniform(3, 18f64.to_radians())
}

/// Three equal levels at the left critical angle of `asymmetric()`.
pub fn critical_division() -> DivisionSpec {
    let zeta = critical_angles(&asymmetric(), &Default::default()).expect("valid gadget");
    DivisionSpec::uniform(3, 2.0 * zeta.l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use origon_core::division::build_division;

    #[test]
    fn fixtures_build() {
        let tol = Default::default();
        assert!(build_division(&asymmetric(), &mixed_division(), &tol).is_ok());
        assert!(build_division(&asymmetric(), &critical_division(), &tol).is_ok());
    }
}
