//! Price functions and fare systems.

mod function;
mod price;
mod system;

pub use function::{PriceFunction, Tail};
pub use price::Price;
pub use system::{
    inside_metropolitan, price_metropolitan, price_short_distance, price_zsd_threshold,
    zone_count_basic, zone_count_no_double, zone_count_zoa, FareSystem, Priced, ShortDistance,
};
