//! Every identity the library exposes, checked in bulk. This runs each sweep
//! family at a small scale; the release gate in tests/acceptance.rs runs the
//! same code at full scale.

use tameconv::{
    associativity_sweep, gauss_jacobi_sweep, picard_lefschetz_check, point_count_sweep,
    rep_suite_sweep, table_sweep, weil_modulus_sweep, Error, SweepConfig,
};

fn main() -> Result<(), Error> {
    println!("{}", weil_modulus_sweep(&SweepConfig::new(60, 8))?.render());
    println!("{}", gauss_jacobi_sweep(&SweepConfig::new(40, 8))?.render());
    println!("{}", associativity_sweep(&SweepConfig::new(30, 6))?.render());

    let suite = rep_suite_sweep(&SweepConfig::new(30, 12))?;
    println!("{}", suite.monoid.render());
    println!("{}", suite.ledger.render());
    println!("{}", suite.erasure.render());

    println!("{}", table_sweep(&SweepConfig::new(40, 8))?.render());
    println!("{}", point_count_sweep(&SweepConfig::new(16, 4))?.render());
    println!("{}", picard_lefschetz_check(&SweepConfig::new(13, 2))?.render());

    // byte-for-byte the same report under the other generator rule
    let mut alt = SweepConfig::new(60, 8);
    alt.rule = tameconv::GeneratorRule::Largest;
    assert_eq!(
        weil_modulus_sweep(&SweepConfig::new(60, 8))?.render(),
        weil_modulus_sweep(&alt)?.render()
    );
    println!("reports are independent of the generator rule");
    Ok(())
}
