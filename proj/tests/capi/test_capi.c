/* Exercises the C interface from C. */

#include <stdio.h>
#include <string.h>

#include "sstt/sstt.h"

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

int main(void) {
  EXPECT(strlen(sstt_version()) > 0);
  EXPECT(sstt_set_fuel(NULL, 10) == SSTT_USAGE_ERROR);
  EXPECT(sstt_tope_query(NULL, "x | TOP |- x <= 1") == SSTT_USAGE_ERROR);

  sstt_session* s = sstt_session_create();
  EXPECT(s != NULL);
  EXPECT(sstt_set_fuel(s, 0) == SSTT_USAGE_ERROR);
  EXPECT(strlen(sstt_last_error(s)) > 0);
  EXPECT(sstt_set_fuel(s, 500) == SSTT_OK);

  EXPECT(sstt_tope_query(s, "x y | x <= y /\\ y <= x |- x === y") == SSTT_OK);
  EXPECT(strcmp(sstt_tope_result(s), "entailed") == 0);
  EXPECT(sstt_tope_query(s, "x y | TOP |- x <= y") == SSTT_CHECK_FAILED);
  EXPECT(strcmp(sstt_tope_result(s), "not entailed; counter-model: 0 = y < x = 1") == 0);
  EXPECT(sstt_tope_query(s, "x | |- x <=") == SSTT_USAGE_ERROR);
  EXPECT(strlen(sstt_last_error(s)) > 0);

  const char* good =
      "def hom (A : U) (x y : A) : U := <{t : Delta1} -> A [t === 0 |-> x, t === 1 |-> y]>\n"
      "def idarr (A : U) (x : A) : hom A x x := \\t. x\n";
  EXPECT(sstt_check_source(s, good, "good.sstt", NULL) == SSTT_OK);
  EXPECT(strstr(sstt_report_json(s), "\"status\": \"ok\"") != NULL);
  EXPECT(strstr(sstt_report_text(s, 0), "ok: 1 file(s), 2 definition(s)") != NULL);

  const char* bad =
      "def hom (A : U) (x y : A) : U := <{t : Delta1} -> A [t === 0 |-> x, t === 1 |-> y]>\n"
      "def wrong (A : U) (x y : A) : hom A x y := \\t. x\n";
  EXPECT(sstt_check_source(s, bad, "bad.sstt", NULL) == SSTT_CHECK_FAILED);
  EXPECT(strstr(sstt_report_json(s), "boundary_mismatch") != NULL);
  EXPECT(strstr(sstt_report_text(s, 0), "bad.sstt:2:") != NULL);

  EXPECT(sstt_check_source(s, "postulate ax : U\n", "ax.sstt", NULL) == SSTT_CHECK_FAILED);
  EXPECT(strstr(sstt_report_json(s), "unledgered_axiom") != NULL);
  EXPECT(sstt_check_source(s, "postulate ax : U\n", "ax.sstt", "ax\ta universe element\n") == SSTT_OK);

  EXPECT(sstt_check_corpus(s, SSTT_CORPUS_DIR) == SSTT_OK);
  const char* missing[] = {"/nonexistent/file.sstt"};
  EXPECT(sstt_check_files(s, missing, 1) == SSTT_IO_ERROR);
  EXPECT(strlen(sstt_last_error(s)) > 0);
  EXPECT(sstt_check_files(s, NULL, 1) == SSTT_USAGE_ERROR);

  sstt_session_destroy(s);
  sstt_session_destroy(NULL);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
