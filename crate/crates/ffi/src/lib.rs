//! C ABI for the haar-immanants library.
