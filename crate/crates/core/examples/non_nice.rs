//! A Keller map that is not nice within 8 steps, and the lowest terms of its
//! difference sequence.
use nicety::corpus::get_fixture;
use nicety::engine::lowest_term_trace;
use nicety::map_io::render_polynomial;
use nicety::{check_nice, keller_check, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    let fx = get_fixture("remark1_nonnice")?;
    let f = &fx.maps["F"];
    let lim = Limits::default();
    println!("Keller: {}", keller_check(&f.map, &lim)?.is_keller);

    let r = check_nice(&f.map, &NiceOptions::with_max_steps(8))?;
    println!("{:?}; steps certified nonzero mod p: {:?}", r.verdict, r.certified_nonzero);

    for (k, q) in lowest_term_trace(&f.map, 0, 9, &lim)? {
        println!("  lowest term of P_{k}^1: {}", render_polynomial(&q, &f.names));
    }
    Ok(())
}
