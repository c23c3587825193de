//! C ABI for the shockpolar library. Populated alongside the core build.
