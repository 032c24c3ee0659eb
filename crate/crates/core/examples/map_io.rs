//! The text format for maps and the JSON format for matrices.
use nicety::map_io::{parse_map, parse_matrix, render_map, render_matrix};

const NAGATA: &str = "\
# Nagata's automorphism, p = x*z + y^2
vars: x y z
F1 = x - 2*y*(x*z + y^2) - z*(x*z + y^2)^2
F2 = y + z*(x*z + y^2)
F3 = z
";

fn main() -> nicety::Result<()> {
    let named = parse_map(NAGATA)?;
    println!("variables: {:?}", named.names);
    println!("targets:   {:?}", named.targets);
    // Rendering expands and orders terms; the result parses back to the same map.
    let text = render_map(&named.map, &named.names)?;
    print!("{text}");
    assert_eq!(parse_map(&text)?.map, named.map);

    let t = parse_matrix(r#"{"rows": 3, "cols": 3, "entries": [[1, 2, 0], [0, 1, "1/2"], [0, 0, 1]]}"#)?;
    print!("T^-1 = {}", render_matrix(&t.inverse()?));

    match parse_map("vars: x y\nF1 = x +\nF2 = y\n") {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
