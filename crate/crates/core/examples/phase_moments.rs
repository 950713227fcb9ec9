//! Moments of e^{a e^{iφ}} under uniform and von Mises phases, and the
//! partition placed at zeros of J0.

use laplaceforge::numerics::{bessel_i0, bessel_j0};
use laplaceforge::rmt_lab::{bessel_zero_partition, isotropy_mc, phase_integral_identity, uniform_phase_second_moment, PhaseDist};

fn main() -> laplaceforge::Result<()> {
    for a in [0.5, 1.0, 2.0] {
        let e = isotropy_mc(PhaseDist::Uniform, a, 200_000, 1)?;
        println!(
            "uniform a = {a}: E[c] = {:.4} (se {:.1e}), E|c|² = {:.4} vs I0(2a) = {:.4}",
            e.mean_c.value,
            e.mean_c.std_error,
            e.mean_cc.value,
            bessel_i0(2.0 * a)?
        );
    }
    let m = uniform_phase_second_moment(1.0, 1.0, 200_000, 2)?;
    println!("E|e^(-zp) - 1|² = {:.4} ± {:.4}, reference {:.4}", m.estimate.value, m.estimate.std_error, m.reference);
    let (lhs, rhs) = phase_integral_identity(1.5)?;
    println!("phase integral {lhs:.12} vs 2πa = {rhs:.12}");

    let r = 2.0;
    let p = bessel_zero_partition(r, 2)?;
    for &bp in &p.breakpoints()[1..3] {
        let a = r * bp;
        let e = isotropy_mc(PhaseDist::VonMises { a: -a }, -a, 200_000, 3)?;
        println!(
            "breakpoint {bp:.4}: J0 = {:.1e}, E[b] = {:.4}, E|b|² = {:.3} ± {:.3}",
            bessel_j0(a),
            e.mean_c.value,
            e.mean_cc.value,
            e.mean_cc.std_error
        );
    }
    Ok(())
}
