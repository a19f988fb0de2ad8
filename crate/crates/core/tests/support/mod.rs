pub mod stopping;
