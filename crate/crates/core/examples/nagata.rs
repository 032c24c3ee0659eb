//! Deciding nicety: Nagata's automorphism is Nice(3).
use nicety::corpus::get_fixture;
use nicety::engine::p_sequence;
use nicety::map_io::render_map;
use nicety::report::{fill_nicety, RunReport};
use nicety::{check_nice, Limits, NiceOptions};

fn main() -> nicety::Result<()> {
    let fx = get_fixture("nagata")?;
    let f = &fx.maps["F"];
    let r = check_nice(&f.map, &NiceOptions::default())?;
    println!("{:?}", r.verdict);
    for s in &r.steps {
        println!("  P_{}: degrees {:?}, terms {:?}", s.k, s.degrees, s.terms);
    }
    println!("first vanishing step per component: {:?}", r.component_vanishing);
    println!("inverse verified: {}", r.inverse_verified);
    print!("{}", render_map(r.inverse.as_ref().unwrap(), &f.names)?);

    let seq = p_sequence(&f.map, 3, &Limits::default())?;
    print!("P_2 =\n{}", render_map(seq.step(2).unwrap(), &f.names)?);

    let mut report = RunReport::new(vec!["check-nice".into()]);
    fill_nicety(&mut report, &r, &f.names);
    println!("{}", report.to_json().lines().take(6).collect::<Vec<_>>().join("\n"));
    Ok(())
}
