#include <adiaclone/hilbert.hpp>

int main() {
  const auto basis = adiaclone::build_basis(adiaclone::BasisSpec::full(3, 1, 1));
  return basis->dimension() == 11 ? 0 : 1;
}
