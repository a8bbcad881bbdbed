#ifndef PBD_BIGFLOAT_HPP
#define PBD_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace pbd {

// Thin RAII wrapper over mpfr_t.  Binary operations round to nearest at
// the larger precision of the two operands.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 96) { mpfr_init2(v_, prec); }

  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_int(std::int64_t x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_sj(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_mpz(const mpz_class& x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat from_mpq(const mpq_class& x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  BigFloat operator+(const BigFloat& o) const {
    BigFloat r(std::max(prec(), o.prec()));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-(const BigFloat& o) const {
    BigFloat r(std::max(prec(), o.prec()));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator*(const BigFloat& o) const {
    BigFloat r(std::max(prec(), o.prec()));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator/(const BigFloat& o) const {
    BigFloat r(std::max(prec(), o.prec()));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigFloat ln() const {
    BigFloat r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat exp() const {
    BigFloat r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
  bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace pbd

#endif  // PBD_BIGFLOAT_HPP
