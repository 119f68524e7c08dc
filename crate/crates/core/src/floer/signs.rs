//! Orientation sign calculus for fiber products of connecting spaces.

/// Formal dimension of the space connecting `α₋` to `α₊`.
pub fn connecting_dim(mu_minus: i64, mu_plus: i64, dim_r_plus: i64) -> i64 {
    mu_plus - mu_minus - 1 + dim_r_plus
}

/// Exponent `(μ − μ₋)·dim M(α, α₊) − (μ − μ₋ − 1)·dim R_α`.
pub fn boundary_sign_exponent(mu_minus: i64, mu: i64, mu_plus: i64, dim_r: i64, dim_r_plus: i64) -> i64 {
    let dim_m = connecting_dim(mu, mu_plus, dim_r_plus);
    (mu - mu_minus) * dim_m - (mu - mu_minus - 1) * dim_r
}

pub fn boundary_sign(mu_minus: i64, mu: i64, mu_plus: i64, dim_r: i64, dim_r_plus: i64) -> i64 {
    parity_sign(boundary_sign_exponent(mu_minus, mu, mu_plus, dim_r, dim_r_plus))
}

/// Sign of swapping the factors of `X₁ ×_Y X₂`.
pub fn fiber_swap_sign(dim_x1: i64, dim_x2: i64, dim_y: i64) -> i64 {
    parity_sign((dim_x1 - dim_y) * (dim_x2 - dim_y))
}

/// Sign of the signed de Rham differential on a form of degree `deg`.
pub fn differential_sign(dim_r: i64, mu: i64, deg: i64) -> i64 {
    parity_sign(dim_r + mu + 1 + deg)
}

pub fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
