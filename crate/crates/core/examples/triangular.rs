//! Random triangular maps are nice, and so are their linear conjugates.
use nicety::constructions::{make_triangular, random_unimodular, TriangularParams};
use nicety::map_io::{default_names, render_map};
use nicety::{check_nice, check_nice_factored, Factored, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    let params = TriangularParams::default();
    let opts = NiceOptions::with_max_steps(64);
    let f = make_triangular(4, &params, 7);
    print!("{}", render_map(&f, &default_names(4))?);
    println!("{:?}", check_nice(&f, &opts)?.verdict);

    for seed in 0..10 {
        let n = 2 + seed as usize % 4;
        let f = make_triangular(n, &params, seed);
        let m = check_nice(&f, &opts)?.verdict;
        // Conjugates are dense; stepping through the factors keeps them cheap.
        let g = Factored::conjugate(&f, &random_unimodular(n, 2, seed), &Limits::default())?;
        let mg = check_nice_factored(&g, &opts)?.verdict;
        println!("n = {n}: F {m:?}, T^-1 F T {mg:?} ({} terms)", g.map().total_terms());
    }
    Ok(())
}
