//! Electromagnetism and Dirac-type spinor fields.

mod em;
mod spinor;


pub use em::{
    charge_conservation, charge_current_bq, em_energy, em_shock_check, fields_from_intensity, intensity_bq,
    intensity_from_values, maxwell_residual, random_em_gap, ChargeCurrent, ChargeCurrentField, EMField, EmEnergy,
    EmShockCheck, HamiltonSplit, MaxwellResidual, Medium, ScalarFn, VectorFn,
};
pub use spinor::{
    harmonic_spinor_convolve, nonoriented_spinor_field, spinor_field_convolve, NonorientedField, OmegaSpinor,
    PhaseSpeed, SpeedRegime, XiSpinor,
};
