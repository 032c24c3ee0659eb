//! Cubic-linear maps X + (AX)^3 with nilpotent Jacobian part.
use nicety::constructions::{random_lower_nilpotent, random_rank_one_nilpotent, DruzkowskiSpec};
use nicety::jacobian::{nilpotence_index, NilpotenceMode};
use nicety::map_io::{default_names, render_map};
use nicety::{check_nice, Limits, NiceOptions, PolyMap, RatMatrix};

fn rows(a: &RatMatrix) -> String {
    let rows: Vec<String> = (0..a.rows()).map(|i| format!("{:?}", a.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())).collect();
    rows.join(" ")
}

fn main() -> nicety::Result<()> {
    let lim = Limits::default();

    // (JH)^2 = 0: Nice(2) and the inverse is X - H.
    let spec = DruzkowskiSpec::new(random_rank_one_nilpotent(4, 3, 11))?;
    let f = spec.build();
    let r = check_nice(&f, &NiceOptions::default())?;
    let inverse_is_x_minus_h = r.inverse.as_ref() == Some(&(&PolyMap::identity(4) - &spec.h()));
    println!("A = {}", rows(spec.matrix()));
    println!("  {:?}, inverse = X - H: {inverse_is_x_minus_h}", r.verdict);

    // (JH)^3 = 0: P_5 = 0 and deg F^-1 <= 9.
    let spec = DruzkowskiSpec::new(random_lower_nilpotent(3, 2, 5))?;
    let f = spec.build();
    let idx = nilpotence_index(&spec.jacobian_h(), 8, NilpotenceMode::Symbolic, &lim)?;
    let r = check_nice(&f, &NiceOptions::default())?;
    println!("A = {}", rows(spec.matrix()));
    println!("  index {:?}, {:?}, deg inverse {:?}", idx.outcome, r.verdict, r.inverse.as_ref().and_then(|g| g.degree()));
    print!("{}", render_map(&f, &default_names(3))?);
    Ok(())
}
