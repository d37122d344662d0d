//! Applying twists, solving the linear equations that produce them, and
//! the gauge and product constructions relating R-matrices.

mod apply;
pub mod cocycle;
mod dyr;
mod gauge;
mod product;

pub use apply::{apply_twist, conjugate};
pub use cocycle::{CocycleData, QCocycle};
pub use dyr::{
    check_linear_equation, eqdiff_b_residual, eqdiff_c_residual, eqdiff_residual, phi,
    solve_dyr_twist, BlockTwist,
};
pub use gauge::gauge;
pub use product::{product_twist, us_sl_n_product_inputs, ProductTwist};
