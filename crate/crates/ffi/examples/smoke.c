#include <stdio.h>
#include "subshift.h"

int main(void) {
    SsLanguage *lang = NULL;
    if (ss_language_from_preset("tribonacci", 10, &lang) != SS_STATUS_OK) {
        fprintf(stderr, "%s\n", ss_last_error_message());
        return 1;
    }
    size_t p = 0;
    ss_language_complexity(lang, 5, &p);
    printf("p(5) = %zu\n", p);

    char *json = NULL;
    if (ss_returns_json(lang, "ab", 100000, &json) == SS_STATUS_OK) {
        printf("%s\n", json);
        ss_string_free(json);
    }
    if (ss_returns_json(lang, "cc", 100000, &json) != SS_STATUS_OK) {
        printf("error: %s\n", ss_last_error_message());
    }
    ss_language_free(lang);
    return 0;
}
