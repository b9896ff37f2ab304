pub mod bounds;
pub mod builder;
pub mod filiform10;
pub mod lie;
pub mod linalg;
pub mod pbw;
pub mod reducer;
pub mod weights;
