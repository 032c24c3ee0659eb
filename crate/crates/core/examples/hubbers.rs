//! The eighth Hubbers class splits into two nice factors.
use nicety::constructions::{hubbers_eighth, HubbersParams};
use nicety::map_io::{default_names, render_map};
use nicety::{check_nice, compose, keller_check, Limits, NiceOptions, Rational};

fn main() -> nicety::Result<()> {
    let lim = Limits::default();
    let names = default_names(4);
    for g4 in [1, 2, -3] {
        let params = HubbersParams { g4: Rational::from(g4), ..HubbersParams::default() };
        let maps = hubbers_eighth(&params)?;
        println!("g4 = {g4}");
        print!("{}", render_map(&maps.f, &names)?);
        println!("  G∘H = F: {}", compose(&maps.g, &maps.h, &lim)? == maps.f);
        println!("  Keller: {}", keller_check(&maps.f, &lim)?.is_keller);
        for (name, m) in [("H", &maps.h), ("G", &maps.g), ("F", &maps.f)] {
            println!("  {name}: {:?}", check_nice(m, &NiceOptions::with_max_steps(16))?.verdict);
        }
    }
    Ok(())
}
