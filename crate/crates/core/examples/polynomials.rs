//! Sparse polynomial arithmetic over the rationals.
use nicety::map_io::{default_names, parse_polynomial, render_polynomial};
use nicety::{Polynomial, Rational};

fn main() -> nicety::Result<()> {
    let names = default_names(3);
    let p = parse_polynomial("x1*x3 + x2^2", &names)?;
    let q = parse_polynomial("1/2*x1 - 3", &names)?;

    println!("p       = {}", render_polynomial(&p, &names));
    println!("q       = {}", render_polynomial(&q, &names));
    println!("p + q   = {}", render_polynomial(&(p.clone() + q.clone()), &names));
    println!("p * q   = {}", render_polynomial(&(p.clone() * q.clone()), &names));
    println!("p^3     = {}", render_polynomial(&p.pow(3)?, &names));
    println!("d/dx2 p = {}", render_polynomial(&p.partial(1)?, &names));
    println!("deg p^3 = {:?}, terms = {}", p.pow(3)?.degree(), p.pow(3)?.num_terms());

    let at = [Rational::from(2), Rational::new(1, 3)?, Rational::from(-1)];
    println!("p(2, 1/3, -1) = {}", p.evaluate(&at)?);

    // Exact division.
    let pq = p.clone() * q.clone();
    assert_eq!(pq.div_exact(&q)?, p);
    assert!(Polynomial::zero(3).is_zero());
    Ok(())
}
