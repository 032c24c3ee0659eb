//! Linear conjugation moves the whole difference sequence along.
use nicety::corpus::get_fixture;
use nicety::engine::conjugation_transport_check;
use nicety::map_io::render_map;
use nicety::{check_nice, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    let fx = get_fixture("nagata")?;
    let f = &fx.maps["F"];
    let t = fx.matrix("T")?;
    let r = conjugation_transport_check(&f.map, t, 4, &Limits::default())?;
    print!("T^-1 F T =\n{}", render_map(&r.conjugate, &f.names)?);
    for (k, ok) in &r.per_step {
        println!("  P~_{k} = T^-1 P_{k} T: {ok}");
    }
    println!("conjugate: {:?}", check_nice(&r.conjugate, &NiceOptions::default())?.verdict);
    Ok(())
}
