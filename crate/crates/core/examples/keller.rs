//! Jacobian matrices, determinants and the Keller condition.
use nicety::corpus::get_fixture;
use nicety::map_io::{default_names, parse_map, render_polynomial};
use nicety::{jacobian, keller_check, Limits};

fn main() -> nicety::Result<()> {
    let lim = Limits::default();
    let names = default_names(4);

    let hubbers = get_fixture("hubbers8_default")?;
    let f = hubbers.map("F")?;
    let j = jacobian(f);
    println!("J(F)[3][1] = {}", render_polynomial(j.get(3, 1), &names));
    let k = keller_check(f, &lim)?;
    println!("det J(F) = {}  Keller: {}", render_polynomial(&k.det, &names), k.is_keller);

    let g = parse_map("vars: x y\nF1 = x + x*y\nF2 = y\n")?;
    let k = keller_check(&g.map, &lim)?;
    println!("det J(x + x*y, y) = {}  Keller: {}", render_polynomial(&k.det, &g.names), k.is_keller);

    // Past 4x4 determinants go through fraction-free elimination.
    let f = parse_map(
        "vars: a b c d e\nF1 = a + b^2\nF2 = b + c^2\nF3 = c + d^2\nF4 = d + e^2\nF5 = e\n",
    )?;
    let k = keller_check(&f.map, &lim)?;
    println!("5x5: det = {}  Keller: {}", render_polynomial(&k.det, &f.names), k.is_keller);
    Ok(())
}
