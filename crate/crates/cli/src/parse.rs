//! Value parsers for the comma-separated numeric flags.

use rdyn::render::Viewport;
use rdyn::Complex64;

fn reals(s: &str, n: usize, what: &str) -> Result<Vec<f64>, String> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == n && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(format!("expected {what}, got '{s}'")),
    }
}

/// `RE,IM`
pub fn complex(s: &str) -> Result<Complex64, String> {
    let v = reals(s, 2, "RE,IM")?;
    Ok(Complex64::new(v[0], v[1]))
}

/// `X0,X1,Y0,Y1`
pub fn view(s: &str) -> Result<[f64; 4], String> {
    let v = reals(s, 4, "X0,X1,Y0,Y1")?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// `C0,C1` with `C0 < C1`
pub fn range(s: &str) -> Result<(f64, f64), String> {
    let v = reals(s, 2, "C0,C1")?;
    if v[0] >= v[1] {
        return Err(format!("range must be increasing, got '{s}'"));
    }
    Ok((v[0], v[1]))
}

/// `WxH`
pub fn size(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected WxH, got '{s}'");
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: usize = w.parse().map_err(|_| bad())?;
    let h: usize = h.parse().map_err(|_| bad())?;
    if w == 0 || h == 0 {
        return Err(bad());
    }
    Ok((w, h))
}

/// Box sides in pixels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scales(pub Vec<usize>);

/// Comma-separated positive integers.
pub fn scales(s: &str) -> Result<Scales, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad scale '{x}'")))
        .collect::<Result<Vec<_>, _>>()
        .map(Scales)
}

pub fn viewport(v: [f64; 4], size: (usize, usize)) -> rdyn::Result<Viewport> {
    Viewport::new(v[0], v[1], v[2], v[3], size.0, size.1)
}
