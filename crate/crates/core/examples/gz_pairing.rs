//! A cubic map in dimension 4 paired with a cubic-linear map in dimension 16.
use std::time::Instant;

use nicety::constructions::{gz_check, GzPair};
use nicety::corpus::get_fixture;
use nicety::map_io::parse_map;
use nicety::{check_nice, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    let lim = Limits::default();
    let fx = get_fixture("gz16")?;
    let pair = GzPair::new(fx.map("f")?.clone(), fx.map("F")?.clone(), fx.matrix("B")?.clone(), fx.matrix("C")?.clone())?;
    let t = Instant::now();
    let r = gz_check(&pair, 3, &lim)?;
    println!("BC = I: {}, f = B F(Cx): {}, p_t = B P_t(Cx): {:?} ({:?})", r.bc_identity, r.map_identity, r.pairing, t.elapsed());
    println!("f: {:?}", check_nice(fx.map("f")?, &NiceOptions::with_max_steps(8))?.verdict);

    // Any map can be hidden in a bigger one.
    let small = parse_map("vars: x y\nF1 = x + y^3\nF2 = y\n")?.map;
    let pair = GzPair::synthetic(small, 3, 42, &lim)?;
    println!("synthetic 2 -> 5 pair passes: {}", gz_check(&pair, 3, &lim)?.passes());
    Ok(())
}
