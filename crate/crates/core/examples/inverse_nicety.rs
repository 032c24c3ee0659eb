//! The inverse of a nice map is nice, with Q_k given by the P_l.
use nicety::corpus::get_fixture;
use nicety::engine::verify_inverse_nicety;
use nicety::{check_nice, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    for (fixture, map) in [("nagata", "F"), ("druzkowski_idx3", "F"), ("hubbers8_default", "H")] {
        let f = get_fixture(fixture)?.map(map)?.clone();
        let m = check_nice(&f, &NiceOptions::default())?.m().expect("nice");
        let r = verify_inverse_nicety(&f, m, &Limits::default())?;
        println!(
            "{fixture}/{map}: m = {m}, Q_m = 0: {}, closed form mismatches: {:?}",
            r.q_vanishes(),
            r.mismatches
        );
    }
    Ok(())
}
