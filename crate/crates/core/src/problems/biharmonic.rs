use crate::error::{Error, Result};
use crate::linalg::StructuredOperator;
use crate::problems::ProblemInstance;
use crate::scalar::Scalar;
use crate::trig::TrigSymbol;

/// `T_n((2 - 2cos x)²)`, the fourth-order finite difference stencil
/// `{1, -4, 6, -4, 1}`, with exact solution `x_j = j/n`.
pub fn biharmonic_problem<T: Scalar>(n: usize) -> Result<ProblemInstance<T>> {
    if n == 0 {
        return Err(Error::BadDimension("biharmonic problem needs n ≥ 1".into()));
    }
    let symbol = TrigSymbol::biharmonic();
    let a = StructuredOperator::toeplitz(symbol.clone(), n)?;
    let nt = T::of_usize(n);
    let x_exact: Vec<T> = (1..=n).map(|j| T::of_usize(j) / nt).collect();
    let b = a.matvec(&x_exact)?;
    Ok(ProblemInstance {
        a,
        b,
        x_exact,
        symbol: Some(symbol),
        description: format!("biharmonic finite differences, n = {n}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::order_of_zero;

    #[test]
    fn pentadiagonal_stencil() {
        let p = biharmonic_problem::<f64>(7).unwrap();
        let d = p.a.to_dense();
        assert_eq!(d.row(3), &[0.0, 1.0, -4.0, 6.0, -4.0, 1.0, 0.0]);
        assert_eq!(d.row(0), &[6.0, -4.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let ones = p.a.matvec(&[1.0; 7]).unwrap();
        assert_eq!(ones[2..5], [0.0, 0.0, 0.0]);
        assert_eq!(
            order_of_zero(p.symbol.as_ref().unwrap(), 0.0)
                .unwrap()
                .order,
            4
        );
        assert!(biharmonic_problem::<f64>(0).is_err());
    }
}
