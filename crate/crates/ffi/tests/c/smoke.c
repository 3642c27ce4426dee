#include <math.h>
#include <stdio.h>
#include <string.h>

#include "ionrwa.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  IonrwaParams *p = NULL;
  CHECK(ionrwa_params_new(0.01, 1.0, 1e-3, 0.5, 1.0, 96, &p) == IONRWA_STATUS_OK);

  double adv = 0.0;
  CHECK(ionrwa_cooling_advantage(p, &adv) == IONRWA_STATUS_OK);
  CHECK(fabs(adv - 1.4254745912821958) < 1e-12);

  IonrwaOracle *o = NULL;
  CHECK(ionrwa_oracle_new(p, &o) == IONRWA_STATUS_OK);
  double r = 1.0;
  CHECK(ionrwa_oracle_offdiagonal_residual(o, IONRWA_KIND_RWA, 2, &r) == IONRWA_STATUS_OK);
  CHECK(r < 1e-8);
  ionrwa_oracle_free(o);

  CHECK(ionrwa_params_set_alpha(p, -1.0) == IONRWA_STATUS_DOMAIN);
  CHECK(strlen(ionrwa_last_error()) > 0);

  double re[4] = {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  double c = 0.0;
  CHECK(ionrwa_pure_concurrence(re, im, &c) == IONRWA_STATUS_OK);
  CHECK(fabs(c - 1.0) < 1e-15);

  CHECK(ionrwa_energies(NULL, IONRWA_KIND_FULL, 0, &r, &r) == IONRWA_STATUS_NULL_POINTER);
  ionrwa_params_free(p);
  printf("ok %s\n", ionrwa_version());
  return 0;
}
