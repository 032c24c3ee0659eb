//! Nilpotence index of J(F - X), symbolically and at random points.
use std::time::Instant;

use nicety::constructions::DruzkowskiSpec;
use nicety::corpus::get_fixture;
use nicety::jacobian::{nilpotence_index, NilpotenceMode};
use nicety::{jacobian, Limits};

fn main() -> nicety::Result<()> {
    let lim = Limits::default();
    let fx = get_fixture("gz16")?;
    let f = fx.map("F")?;
    let jh = jacobian(&f.minus_identity()?);

    let t = Instant::now();
    let r = nilpotence_index(&jh, 32, NilpotenceMode::Randomized { samples: 8, seed: 1 }, &lim)?;
    println!("randomized (8 points): {:?} in {:?}", r.outcome, t.elapsed());

    // Recognized cubic-linear maps carry JH = 3 diag(L^2) A, which keeps the
    // symbolic powers small.
    let spec = DruzkowskiSpec::recognize(f).expect("cubic-linear");
    let t = Instant::now();
    let r = nilpotence_index(&spec.jacobian_h(), 32, NilpotenceMode::Symbolic, &lim)?;
    println!("symbolic:              {:?} in {:?}", r.outcome, t.elapsed());
    Ok(())
}
