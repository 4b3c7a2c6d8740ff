/* Example C client: create a field, count power classes, evaluate a
 * series, and decide one conjugacy class.
 *
 * Build from the repository root:
 *   cargo build -p glpow-ffi
 *   cc crates/glpow-ffi/examples/demo.c \
 *      -Icrates/glpow-ffi/include \
 *      target/debug/libglpow_ffi.a -lm -o demo
 *   ./demo
 */
#include <stdio.h>
#include <stdlib.h>

#include "glpow.h"

static void check(GlpStatus status, const char *what) {
  if (status == GLP_STATUS_OK) {
    return;
  }
  char *msg = NULL;
  glp_last_error(&msg);
  fprintf(stderr, "%s failed (status %d): %s\n", what, (int)status,
          msg ? msg : "no message");
  glp_string_free(msg);
  exit(1);
}

int main(void) {
  GlpField *field = NULL;
  check(glp_field_new("3", &field), "glp_field_new");

  char *value = NULL;
  check(glp_count_nm(field, 2, 2, &value), "glp_count_nm");
  printf("N_2(3, 2) = %s\n", value);
  glp_string_free(value);

  check(glp_series_json(field, "mpow_classes_rs", 2, 4, &value),
        "glp_series_json");
  printf("mpow_classes_rs over F_3 at M = 2: %s\n", value);
  glp_string_free(value);

  check(glp_theta_image_count(8, 2, &value), "glp_theta_image_count");
  printf("|Theta_2 image at weight 8| = %s\n", value);
  glp_string_free(value);

  const char *data =
      "{\"field\": \"3\", \"entries\": [{\"poly\": [1, 1], \"partition\": [1]}]}";
  check(glp_class_decide_json(data, 2, &value), "glp_class_decide_json");
  printf("decision for x + 1 -> (1) at M = 2: %s\n", value);
  glp_string_free(value);

  glp_field_free(field);
  return 0;
}
