/* Compiled as C99 to prove the public header is plain C. */
#include "dynlink/dynlink.h"

int c_client_synth_nodes(size_t nodes, size_t* out_nodes, size_t* out_snapshots) {
  dl_synth_config cfg;
  dl_network* net = NULL;
  dl_status st;
  dl_synth_config_default(&cfg);
  cfg.num_nodes = nodes;
  cfg.num_communities = 2;
  cfg.p_in = 0.2;
  cfg.p_out = 0.02;
  st = dl_network_synth(&cfg, &net);
  if (st != DL_OK) return (int)st;
  st = dl_network_info(net, out_nodes, out_snapshots);
  dl_network_free(net);
  return (int)st;
}
