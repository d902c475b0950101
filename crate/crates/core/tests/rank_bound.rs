// Kept in its own binary: it mutates the process environment.

use uhecke::hecke::eigenvector;
use uhecke::{max_symbolic_rank, Error, Sign, DEFAULT_MAX_R};

#[test]
fn rank_bound_comes_from_the_environment() {
    std::env::remove_var("UHECKE_MAX_R");
    assert_eq!(max_symbolic_rank(), DEFAULT_MAX_R);
    std::env::set_var("UHECKE_MAX_R", "2");
    assert_eq!(max_symbolic_rank(), 2);
    assert!(matches!(eigenvector(3, Sign::Plus), Err(Error::BoundExceeded { rank: 3, bound: 2 })));
    assert!(eigenvector(2, Sign::Plus).is_ok());
    std::env::remove_var("UHECKE_MAX_R");
}
