//! Mixed Dirichlet-Neumann problem in the upper half-plane: Dirichlet data
//! on the negative axis, Neumann data on the positive axis, solved for two
//! closed-form harmonic functions with exact and perturbed extensions.

use mellin_bie::potential_theory::{default_probes, run_manufactured, BvpOptions, ExtensionMode, HarmonicCase};

fn main() -> mellin_bie::Result<()> {
    let probes = default_probes();
    let opts = BvpOptions::default();
    for case in HarmonicCase::ALL {
        for mode in [ExtensionMode::TrueTrace, ExtensionMode::BumpPerturbed] {
            let o = run_manufactured(case, mode, &probes, &opts)?;
            let s = &o.summary;
            println!(
                "{} / {:<14} max rel error {:.2e}, identities {:.1e} {:.1e}",
                case.name(),
                mode.name(),
                s.max_relative_error,
                s.calderon.dirichlet_identity,
                s.calderon.neumann_identity
            );
        }
    }
    let o = run_manufactured(HarmonicCase::Case1, ExtensionMode::TrueTrace, &[[0.5, 0.25]], &opts)?;
    let r = &o.records[0];
    println!(
        "u(0.5, 0.25): reconstructed {:.12}, exact {:.12}",
        r.u_reconstructed, r.u_exact
    );
    Ok(())
}
