//! Composition and iteration of maps.
use nicety::map_io::{parse_map, render_map};
use nicety::{compose, iterate, Limits};

fn main() -> nicety::Result<()> {
    let f = parse_map("vars: x y\nF1 = x + y^2\nF2 = y\n")?;
    let g = parse_map("vars: x y\nF1 = x\nF2 = y + x^3\n")?;
    let lim = Limits::default();

    print!("f∘g:\n{}", render_map(&compose(&f.map, &g.map, &lim)?, &f.names)?);
    print!("g∘f:\n{}", render_map(&compose(&g.map, &f.map, &lim)?, &f.names)?);
    print!("f∘f∘f:\n{}", render_map(&iterate(&f.map, 3, &lim)?, &f.names)?);

    // A term budget turns runaway expansions into an error instead of an OOM.
    let tight = Limits::with_budget(10);
    match iterate(&compose(&f.map, &g.map, &lim)?, 3, &tight) {
        Err(e) => println!("with budget 10: {e}"),
        Ok(h) => println!("fits: {} terms", h.total_terms()),
    }
    Ok(())
}
