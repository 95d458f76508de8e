from .makarov import (ModelParams, QuantumNumbers, RadialChannel, AngularChannel, SpectrumEntry, Spectrum,
                      makarov_potential, separation_constants, ell_from_t, radial_aim_problem, angular_aim_problem,
                      energy_from_nu, radial_energy_closed_form, angular_exponents, effective_ell, angular_channel,
                      radial_channel, self_consistency_defect, self_consistent_roots, self_consistent_spectrum,
                      spectrum, polar_equation_residual, verify_angular_reduction)

__all__ = ["ModelParams", "QuantumNumbers", "RadialChannel", "AngularChannel", "SpectrumEntry", "Spectrum",
           "makarov_potential", "separation_constants", "ell_from_t", "radial_aim_problem", "angular_aim_problem",
           "energy_from_nu", "radial_energy_closed_form", "angular_exponents", "effective_ell", "angular_channel",
           "radial_channel", "self_consistency_defect", "self_consistent_roots", "self_consistent_spectrum",
           "spectrum", "polar_equation_residual", "verify_angular_reduction"]
