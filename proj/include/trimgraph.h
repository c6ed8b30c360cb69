/* C interface to the trimgraph library. All report functions write a
 * malloc'd JSON string to *out; release it with tg_string_free. Functions
 * return TG_OK on success; on failure *out is untouched and
 * tg_last_error() describes what went wrong. */
#ifndef TRIMGRAPH_H
#define TRIMGRAPH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tg_graph tg_graph;

enum tg_status {
  TG_OK = 0,
  TG_ERR_INVALID = 1,  /* bad arguments, parse errors, domain errors */
  TG_ERR_FAILED = 2    /* a verification ran and did not pass */
};

const char* tg_last_error(void);
void tg_string_free(char* s);

int tg_graph_parse(const char* text, tg_graph** out);
int tg_graph_from_json(const char* json_text, tg_graph** out);
void tg_graph_free(tg_graph* g);
int tg_graph_to_text(const tg_graph* g, char** out);
int tg_graph_to_json(const tg_graph* g, char** out);

/* catalog */
int tg_catalog_list(char** out);
int tg_catalog_show(const char* name, int param, char** out);
int tg_catalog_graph(const char* name, int param, tg_graph** out);
/* returns TG_ERR_FAILED when a check fails; *out is written either way */
int tg_catalog_verify(const char* name, int param, char** out);

/* trimming */
int tg_check_trim(const tg_graph* g, const char* vertex, char** out);
int tg_trim(const tg_graph* g, const char* vertex, tg_graph** e_prime,
            tg_graph** e_dprime);
int tg_extend_loop(const tg_graph* g, const char* new_vertex,
                   const char* const* attach, int attach_count, tg_graph** out);
int tg_extend_sink(const tg_graph* g, const char* new_vertex,
                   const char* const* attach, int attach_count, tg_graph** out);

/* K-theory */
int tg_k_groups(const tg_graph* g, char** out);
int tg_k1_unitary(const tg_graph* g, const char* vertex, char** out);
int tg_fixed_k0(const tg_graph* g, const char* vertex, int levels, char** out);

/* pullback verification; TG_ERR_FAILED when the checks do not pass */
int tg_pullback(const tg_graph* g, const char* vertex, int max_len, int max_u_deg,
                char** out);
int tg_milnor(const tg_graph* g, const char* vertex, char** out);
int tg_verify_qlpb(int l, int max_len, char** out);
int tg_projective_chain(int n, char** out);
int tg_teardrop_chain(int l, char** out);

#ifdef __cplusplus
}
#endif

#endif
